"""Exhaustive decision procedures over canonical finite-model enumerations.

Everything here is brute force on purpose: for the resolutions and atom
counts in scope the model spaces are small enough to sweep, and the sweep
order is canonical, so the reported countermodel is always the same one.
Countermodels found by the vectorized engine are re-evaluated with the
plain recursive evaluator before being returned.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import bulk
from .errors import CapExceeded, VariantMismatch
from .formula import (
    Atom, Box, Coef, Comp, Dia, Formula, Imp, Neg, atoms_of, desugar,
    DEFAULT_RESERVED, subformulas, to_text,
)
from .kripke import Model, MVS5Model, PossibilisticModel, World, valuation_types
from .semantics import SemanticsVariant, _check_language, eval_formula
from .values import TruthValue, one, tv

DEFAULT_CAP = 10_000_000


@dataclass
class Verdict:
    is_tautology: bool
    models_checked: int
    countermodel: Model | None = None
    world_id: str | None = None
    value: TruthValue | None = None

    def __bool__(self):
        return self.is_tautology


def model_space_size(variant: SemanticsVariant, num_atoms: int, n: int) -> int:
    v = n ** num_atoms
    if variant is SemanticsVariant.MVS5:
        return bulk.mvs5_model_count(v)
    return bulk.poss_model_count(v, n)


def _enforce_cap(size: int, cap: int):
    if size > cap:
        raise CapExceeded(f"enumeration would visit {size} models, cap is {cap}")


def is_one_tautology(
    f: Formula,
    variant: SemanticsVariant,
    atoms=None,
    n: int = 3,
    cap: int = DEFAULT_CAP,
    reserved: str = DEFAULT_RESERVED,
) -> Verdict:
    """Does f take value 1 at every world of every canonical model?

    Sweeps the canonical enumeration for the variant; on failure returns
    the first countermodel in canonical order, re-verified against the
    recursive evaluator.
    """
    core = desugar(f, reserved)
    _check_language(core, variant)
    if atoms is None:
        atoms = atoms_of(core)
    atoms = tuple(sorted(set(atoms) | set(atoms_of(core)))) or ("q",)
    space = bulk.TypeSpace(atoms, n)
    possibilistic = variant is not SemanticsVariant.MVS5
    total = model_space_size(variant, len(atoms), n)
    _enforce_cap(total, cap)

    if possibilistic:
        chunks = bulk.poss_rows(space.size, n)
    else:
        chunks = bulk.mvs5_rows(space.size)
    checked = 0
    top = n - 1
    for rows in chunks:
        vals = bulk.evaluate(core, space, rows, variant.value)
        hit = bulk.first_failure(vals, rows >= 0, top)
        if hit is None:
            checked += len(rows)
            continue
        m, t = hit
        checked += m + 1
        model = bulk.materialize(rows[m], space, possibilistic)
        # map the failing type index to the world id within the support
        wpos = int((rows[m][: t + 1] >= 0).sum()) - 1
        wid = model.worlds[wpos].id
        value = eval_formula(f, model, wid, variant, reserved)
        bulk_value = int(np.broadcast_to(vals, rows.shape)[m, t])
        if value.num != bulk_value:
            raise AssertionError(
                f"engines disagree on {to_text(f)}: {value.num} vs {bulk_value}")
        return Verdict(False, checked, model, wid, value)
    return Verdict(True, checked)


def entails(
    premises,
    conclusion: Formula,
    variant: SemanticsVariant,
    atoms=None,
    n: int = 3,
    cap: int = DEFAULT_CAP,
    reserved: str = DEFAULT_RESERVED,
) -> Verdict:
    """Local consequence: wherever every premise is 1, the conclusion is 1."""
    premises = list(premises)
    cores = [desugar(g, reserved) for g in premises]
    core = desugar(conclusion, reserved)
    for g in cores + [core]:
        _check_language(g, variant)
    if atoms is None:
        atoms = set()
    atoms = set(atoms) | set(atoms_of(core))
    for g in cores:
        atoms |= set(atoms_of(g))
    atoms = tuple(sorted(atoms)) or ("q",)

    space = bulk.TypeSpace(atoms, n)
    possibilistic = variant is not SemanticsVariant.MVS5
    _enforce_cap(model_space_size(variant, len(atoms), n), cap)
    chunks = (
        bulk.poss_rows(space.size, n) if possibilistic else bulk.mvs5_rows(space.size)
    )
    top = n - 1
    checked = 0
    for rows in chunks:
        present = rows >= 0
        cache: dict = {}
        ok = np.ones(rows.shape, dtype=bool)
        for g in cores:
            ok &= np.broadcast_to(bulk.evaluate(g, space, rows, variant.value, cache=cache),
                                  rows.shape) == top
        concl = np.broadcast_to(bulk.evaluate(core, space, rows, variant.value, cache=cache),
                                rows.shape)
        fails = present & ok & (concl < top)
        models = fails.any(axis=1)
        if not models.any():
            checked += len(rows)
            continue
        m = int(models.argmax())
        t = int(fails[m].argmax())
        checked += m + 1
        model = bulk.materialize(rows[m], space, possibilistic)
        wpos = int((rows[m][: t + 1] >= 0).sum()) - 1
        wid = model.worlds[wpos].id
        value = eval_formula(conclusion, model, wid, variant, reserved)
        for g in premises:
            assert eval_formula(g, model, wid, variant, reserved).num == top
        return Verdict(False, checked, model, wid, value)
    return Verdict(True, checked)


def equiv_check(
    f: Formula,
    g: Formula,
    variant: SemanticsVariant,
    atoms=None,
    n: int = 3,
    cap: int = DEFAULT_CAP,
    reserved: str = DEFAULT_RESERVED,
) -> Verdict:
    """Do f and g take the same value everywhere?  (Stronger than mutual entailment.)"""
    from .formula import Iff

    core_f, core_g = desugar(f, reserved), desugar(g, reserved)
    for h in (core_f, core_g):
        _check_language(h, variant)
    if atoms is None:
        atoms = set()
    atoms = tuple(sorted(set(atoms) | set(atoms_of(core_f)) | set(atoms_of(core_g)))) or ("q",)
    # value equality everywhere is exactly Iff(f, g) being 1 everywhere
    return is_one_tautology(Iff(f, g), variant, atoms, n, cap, reserved)


def is_ln_tautology(f: Formula, atoms=None, n: int = 3, reserved: str = DEFAULT_RESERVED) -> Verdict:
    """Propositional 1-tautology check: a sweep over valuations.

    The countermodel, if any, is a one-world MVS5 model so the same JSON
    tooling applies.
    """
    core = desugar(f, reserved)
    for g in subformulas(core):
        if isinstance(g, (Box, Dia, Comp)):
            raise VariantMismatch("propositional check got a modal formula")
    if atoms is None:
        atoms = atoms_of(core)
    atoms = tuple(sorted(set(atoms) | set(atoms_of(core)))) or ("q",)
    from .measures import _prop_value

    top = n - 1
    checked = 0
    for nums in valuation_types(atoms, n):
        checked += 1
        if _prop_value(core, dict(zip(atoms, nums)), n) != top:
            world = World("w0", {a: tv(k, n) for a, k in zip(atoms, nums)})
            model = MVS5Model(n, atoms, [world])
            value = eval_formula(f, model, "w0", SemanticsVariant.MVS5, reserved)
            return Verdict(False, checked, model, "w0", value)
    return Verdict(True, checked)


# ---------------------------------------------------------------------------
# Axiom suites: sweep a schema catalog over budgeted instantiations.


@dataclass
class SuiteItem:
    schema_id: str
    instance: Formula
    verdict: Verdict
    note: str = ""


@dataclass
class SuiteReport:
    system: str
    n: int
    items: list[SuiteItem] = field(default_factory=list)

    @property
    def failures(self):
        return [it for it in self.items if not it.verdict.is_tautology]

    @property
    def ok(self) -> bool:
        return all(it.verdict.is_tautology for it in self.items)

    @property
    def models_checked(self) -> int:
        return sum(it.verdict.models_checked for it in self.items)


def _suite_substitutions(metavars, atoms, n, seed, per_schema, depth=2):
    """Deterministic substitution pool: atom tuples first, then a seeded
    sample of the depth-bounded formula pool (taking the full product of a
    depth-2 pool over three metavariables is hopeless)."""
    import random

    from .formula import Imp as FImp, Max as FMax, Min as FMin, formulas_by_depth

    pool = list(formulas_by_depth(atoms, depth, [Neg], [FImp, FMin, FMax]))
    rng = random.Random(seed)
    base: list[dict] = []
    for combo in itertools.product(atoms, repeat=len(metavars)):
        base.append({v: Atom(a) for v, a in zip(metavars, combo)})
        if len(base) >= per_schema:
            break
    while len(base) < per_schema:
        base.append({v: pool[rng.randrange(len(pool))] for v in metavars})
    return base[:per_schema]


def axiom_suite(
    system: str,
    n: int = 3,
    atoms=("q", "r"),
    depth: int = 2,
    per_schema: int = 4,
    seed: int = 0,
    cap: int = DEFAULT_CAP,
    include_lemmas: bool = True,
) -> SuiteReport:
    """Check every schema of a system over a budget of concrete instances.

    Parameters (coefficient indices, the composed connective, mecs) are
    swept exhaustively where cheap and round-robined otherwise.
    """
    from . import proofs
    from .formula import Mec, mec_enumerate
    from .values import TRUTH_FUNCTIONS, all_values

    catalog = proofs.CATALOG[system]
    report = SuiteReport(system, n)
    atoms = tuple(atoms)
    variant = {
        "ln": None,
        "mvs5": SemanticsVariant.MVS5,
        "mvkd45": SemanticsVariant.MVKD45,
        "qfl2": SemanticsVariant.QFL2,
    }[system]

    # the mec parameter must be maximal over every atom the instance can
    # mention, or axioms (1)/(2) are simply false
    mec_atoms = atoms
    mecs = mec_enumerate(mec_atoms, n)

    vals = all_values(n)
    for schema in catalog.values():
        if schema.lemma and not include_lemmas:
            continue
        substs = _suite_substitutions(schema.metavars, atoms, n, seed, per_schema, depth)
        for k, subst in enumerate(substs):
            for pos, v in enumerate(schema.boolean_vars):
                # Boolean-restricted metavariables get coefficient formulas
                subst = {**subst, v: Coef(vals[(k + pos) % n], subst[v])}
            for params in _param_sweep(schema, n, mecs, mec_atoms, k):
                try:
                    inst = proofs.instantiate(schema, subst, params, n, system)
                except ValueError as exc:
                    report.items.append(SuiteItem(
                        schema.id, Atom("q"), Verdict(True, 0),
                        note=f"skipped: {exc}"))
                    continue
                if variant is None:
                    verdict = is_ln_tautology(inst, atoms, n)
                else:
                    verdict = is_one_tautology(inst, variant, None, n, cap)
                report.items.append(SuiteItem(schema.id, inst, verdict))
    return report


def _param_sweep(schema, n, mecs, mec_atoms, round_idx):
    """Concrete parameter dicts for one substitution of a schema."""
    from .values import TRUTH_FUNCTIONS, all_values

    vals = all_values(n)
    names = set(schema.params)
    if not names:
        yield {}
        return
    if names == {"i"}:
        for i in vals:
            yield {"i": i}
    elif names == {"j"}:
        for j in vals:
            yield {"j": j}
    elif names == {"m"}:
        found = False
        for m in range(2, n - 1):
            if (n - 1) % (m - 1) != 0:
                found = True
                yield {"m": m}
        if not found:
            # no admissible m at this resolution; signal via an impossible one
            yield {"m": 0}
    elif names == {"i", "j", "star"}:
        stars = sorted(TRUTH_FUNCTIONS)
        star = stars[round_idx % len(stars)]
        for i in vals:
            for j in vals:
                yield {"i": i, "j": j, "star": star}
    elif names == {"j", "E"}:
        for j in vals:
            yield {"j": j, "E": mecs[(round_idx + j.num) % len(mecs)]}
    elif names == {"j", "atoms"}:
        for j in vals:
            yield {"j": j, "atoms": mec_atoms}
    else:
        raise AssertionError(f"no sweep rule for parameters {sorted(names)}")
