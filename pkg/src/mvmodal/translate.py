"""Interpretations of the comparative-possibility language in the modal logics.

Two translations, both homomorphic on the ordinary connectives:

* into the S5-style logic, A <| B becomes dia(p /\\ A) -> dia(p /\\ B) over
  the reserved distribution atom p, and the double-star form guards the
  result with (1)dia p so it is vacuous on models where p is not normalized;
* into the KD45-style logic, A <| B becomes dia A -> dia B directly, since
  dia already computes possibility there.

The experiment at the bottom sweeps formula families and confirms that
tautology status survives both translations.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from . import bulk
from .errors import CapExceeded
from .formula import (
    Atom, Box, Coef, Comp, CompP, Dia, Formula, Iff, Imp, Max, Min, Neg,
    QFL2_BINARY, SConj, SDisj, DEFAULT_RESERVED, atoms_of, desugar,
    formulas_by_size, random_formula, to_text,
)
from .kripke import PossibilisticModel, p_extension
from .semantics import SemanticsVariant, _check_language, eval_formula
from .values import one

_HOMOMORPHIC = {Neg: 1, Imp: 2, Min: 2, Max: 2, SConj: 2, SDisj: 2, Iff: 2}


def _translate(f: Formula, comp_case) -> Formula:
    core = desugar(f)
    _check_language(core, SemanticsVariant.QFL2)

    def go(g):
        match g:
            case Atom(_):
                return g
            case Comp(a, b):
                return comp_case(go(a), go(b))
            case Neg(a):
                return Neg(go(a))
            case _:
                return type(g)(go(g.a), go(g.b))

    return go(core)


def star_mvs5(f: Formula, reserved: str = DEFAULT_RESERVED) -> Formula:
    """Comparison becomes the p-relative comparison of the extended language."""
    if reserved in atoms_of(f):
        raise ValueError(f"reserved atom {reserved!r} occurs in the formula")
    return _translate(f, CompP)


def star_star_mvs5(f: Formula, n: int, reserved: str = DEFAULT_RESERVED) -> Formula:
    """The guarded form: (1)dia p -> A*."""
    return Imp(Coef(one(n), Dia(Atom(reserved))), star_mvs5(f, reserved))


def star_mvkd45(f: Formula) -> Formula:
    """Comparison becomes dia A -> dia B."""
    return _translate(f, lambda a, b: Imp(Dia(a), Dia(b)))


def model_correspondence(
    f: Formula, model: PossibilisticModel, reserved: str | None = None
) -> list[str]:
    """Mismatches between f in the model and A* in its p-extension, per world."""
    reserved = reserved or model.reserved_p
    star = star_mvs5(f, reserved)
    ext = p_extension(model, reserved)
    problems = []
    for wid in model.world_ids():
        lhs = eval_formula(f, model, wid, SemanticsVariant.QFL2)
        rhs = eval_formula(star, ext, wid, SemanticsVariant.MVS5, reserved)
        if lhs != rhs:
            problems.append(f"world {wid}: {lhs} under <| vs {rhs} for the translation")
    return problems


# ---------------------------------------------------------------------------
# The faithfulness experiment.


@dataclass
class Disagreement:
    formula: Formula
    qfl2: bool
    mvs5: bool
    mvkd45: bool
    witness: object = None  # countermodel from whichever leg failed


@dataclass
class FaithfulnessReport:
    atoms: tuple[str, ...]
    n: int
    total: int = 0
    tautologies: int = 0
    by_size: dict[int, list[int]] = field(default_factory=dict)  # size -> [total, taut]
    disagreements: list[Disagreement] = field(default_factory=list)
    model_checks: int = 0
    model_failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements and not self.model_failures


def _size(f: Formula) -> int:
    if isinstance(f, Atom):
        return 1
    if hasattr(f, "b"):
        return 1 + _size(f.a) + _size(f.b)
    return 1 + _size(f.a)


def _formula_stream(atoms, max_size, sample, seed):
    if sample is None:
        yield from formulas_by_size(atoms, max_size, [Neg], list(QFL2_BINARY))
    else:
        rng = random.Random(seed)
        for _ in range(sample):
            yield random_formula(rng, atoms, size=rng.randint(2, max_size),
                                 unary=[Neg], binary=list(QFL2_BINARY))


def faithfulness_experiment(
    atoms,
    n: int = 3,
    max_size: int = 7,
    sample: int | None = None,
    seed: int = 0,
    reserved: str = DEFAULT_RESERVED,
    cap: int = 10_000_000,
    model_check_stride: int = 50,
) -> FaithfulnessReport:
    """Tautology status of A, its guarded S5 translation, and its KD45
    translation, over an exhaustive size-bounded family (or a seeded random
    sample when `sample` is given).

    The S5 leg enumerates genuine models over atoms + p when that space is
    small; otherwise it sweeps maps from valuation types to p-values, which
    is exact because p only occurs under dia in the translation, so a model
    contributes exactly what its per-type maximum of p contributes.

    Every `model_check_stride`-th formula is additionally checked
    world-by-world on random possibilistic models against its translation.
    """
    atoms = tuple(sorted(atoms))
    space = bulk.TypeSpace(atoms, n)
    if bulk.poss_model_count(space.size, n) > cap:
        raise CapExceeded("possibilistic enumeration exceeds the cap")
    top = n - 1

    poss = np.concatenate(list(bulk.poss_rows(space.size, n)))
    qfl2_cache: dict = {}
    kd45_cache: dict = {}

    ext_space = bulk.TypeSpace(atoms + (reserved,), n)
    full_mvs5 = bulk.mvs5_model_count(ext_space.size) <= 100_000
    if full_mvs5:
        mvs5_rows = np.concatenate(list(bulk.mvs5_rows(ext_space.size)))
        mvs5_space, mvs5_variant, p_from_rows = ext_space, "mvs5", None
    else:
        if bulk.poss_model_count(space.size, n, normalized=False) > cap:
            raise CapExceeded("p-value map enumeration exceeds the cap")
        mvs5_rows = np.concatenate(list(bulk.poss_rows(space.size, n, normalized=False)))
        mvs5_space, mvs5_variant, p_from_rows = space, "pguard", reserved
    mvs5_cache: dict = {}

    def taut(core, space_, rows, variant, cache, p=None):
        vals = bulk.evaluate(core, space_, rows, variant, p, cache)
        present = rows >= 0
        return not (present & (np.broadcast_to(vals, present.shape) < top)).any()

    report = FaithfulnessReport(atoms, n)
    rng = random.Random(seed + 1)
    from .kripke import random_possibilistic_model

    for f in _formula_stream(atoms, max_size, sample, seed):
        report.total += 1
        core = desugar(f)
        t_q = taut(core, space, poss, "qfl2", qfl2_cache)
        t_k = taut(desugar(star_mvkd45(f)), space, poss, "mvkd45", kd45_cache)
        t_s = taut(desugar(star_star_mvs5(f, n, reserved), reserved),
                   mvs5_space, mvs5_rows, mvs5_variant, mvs5_cache, p_from_rows)
        tally = report.by_size.setdefault(_size(f), [0, 0])
        tally[0] += 1
        if t_q:
            report.tautologies += 1
            tally[1] += 1
        if not (t_q == t_k == t_s):
            witness = _witness(f, t_q, t_k, n, atoms, reserved)
            report.disagreements.append(Disagreement(f, t_q, t_s, t_k, witness))
        if report.total % model_check_stride == 0:
            model = random_possibilistic_model(rng, n, atoms)
            report.model_checks += 1
            for problem in model_correspondence(f, model, reserved):
                report.model_failures.append(f"{to_text(f)}: {problem}")
    return report


def _witness(f, t_q, t_k, n, atoms, reserved):
    """A countermodel from the first failing leg, for the disagreement record."""
    from .decide import is_one_tautology

    if not t_q:
        return is_one_tautology(f, SemanticsVariant.QFL2, atoms, n).countermodel
    if not t_k:
        return is_one_tautology(star_mvkd45(f), SemanticsVariant.MVKD45, atoms, n).countermodel
    return None
