"""Independent Boolean oracles for the two-valued degeneration.

At resolution 2 the many-valued semantics should collapse to ordinary
classical modal logic: MVS5 to S5 and MVKD45 to KD45 (where box quantifies
over the fully possible worlds).  This module implements that classical
side from scratch with plain bools, sharing no evaluation code with the
many-valued engines, so agreement between the two is meaningful.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .formula import (
    Atom, Box, Coef, Comp, Dia, Formula, Iff, Imp, Max, Min, Neg, SConj,
    SDisj, TOP_ATOM, atoms_of, desugar,
)


def _holds(f: Formula, world: dict[str, bool], belief: list[dict[str, bool]]) -> bool:
    """Classical truth at a world; modalities quantify over the belief set."""
    match f:
        case Atom(name):
            if name == TOP_ATOM and name not in world:
                return False
            return world[name]
        case Neg(a):
            return not _holds(a, world, belief)
        case Imp(a, b):
            return (not _holds(a, world, belief)) or _holds(b, world, belief)
        case Min(a, b) | SConj(a, b):
            return _holds(a, world, belief) and _holds(b, world, belief)
        case Max(a, b) | SDisj(a, b):
            return _holds(a, world, belief) or _holds(b, world, belief)
        case Iff(a, b):
            return _holds(a, world, belief) == _holds(b, world, belief)
        case Coef(i, a):
            inner = _holds(a, world, belief)
            return inner if i.num == i.n - 1 else not inner
        case Dia(a):
            return any(_holds(a, w, belief) for w in belief)
        case Box(a):
            return all(_holds(a, w, belief) for w in belief)
        case Comp(a, b):
            pa = any(_holds(a, w, belief) for w in belief)
            pb = any(_holds(b, w, belief) for w in belief)
            return (not pa) or pb
    raise TypeError(f"not a core formula node: {f!r}")


def _valuations(atoms):
    for bits in itertools.product((False, True), repeat=len(atoms)):
        yield dict(zip(atoms, bits))


def s5_valid(f: Formula, atoms=None) -> bool:
    """Classical S5 validity by brute force over nonempty world sets."""
    core = desugar(f)
    atoms = tuple(sorted(set(atoms or ()) | set(atoms_of(core)))) or ("q",)
    vals = list(_valuations(atoms))
    for k in range(1, len(vals) + 1):
        for worlds in itertools.combinations(range(len(vals)), k):
            ws = [vals[i] for i in worlds]
            if not all(_holds(core, w, ws) for w in ws):
                return False
    return True


def kd45_valid(f: Formula, atoms=None) -> bool:
    """Classical KD45 validity: each model is a world set plus a nonempty
    belief subset; modalities see only the belief subset."""
    core = desugar(f)
    atoms = tuple(sorted(set(atoms or ()) | set(atoms_of(core)))) or ("q",)
    vals = list(_valuations(atoms))
    idx = range(len(vals))
    for k in range(1, len(vals) + 1):
        for worlds in itertools.combinations(idx, k):
            ws = [vals[i] for i in worlds]
            for b in range(1, len(ws) + 1):
                for bel in itertools.combinations(range(len(ws)), b):
                    belief = [ws[i] for i in bel]
                    if not all(_holds(core, w, belief) for w in ws):
                        return False
    return True


@dataclass
class DegenerationItem:
    formula: Formula
    many_valued: bool
    classical: bool

    @property
    def agree(self) -> bool:
        return self.many_valued == self.classical


@dataclass
class DegenerationReport:
    system: str
    items: list[DegenerationItem]

    @property
    def ok(self) -> bool:
        return all(it.agree for it in self.items)


def degeneration_report(formulas, system: str = "mvs5", atoms=None) -> DegenerationReport:
    """Compare the n=2 many-valued verdict with the classical oracle."""
    from .decide import is_one_tautology
    from .semantics import SemanticsVariant

    variant = SemanticsVariant.MVS5 if system == "mvs5" else SemanticsVariant.MVKD45
    oracle = s5_valid if system == "mvs5" else kd45_valid
    items = []
    for f in formulas:
        mv = is_one_tautology(f, variant, atoms, n=2).is_tautology
        items.append(DegenerationItem(f, mv, oracle(f, atoms)))
    return DegenerationReport(system, items)
