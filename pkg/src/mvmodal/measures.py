"""Possibility measures as data: a table over maximal elementary conjunctions.

A measure is stored extensionally: one value per mec over the declared
atoms.  That is complete for the propositional fragment, since every
modal-free formula decomposes through its coefficient slices and every
coefficient formula is a disjunction of mecs.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import UnknownAtom
from .values import TruthValue, all_values, one, parse_value, tv
from .formula import (
    Box, Comp, Dia, Formula, Mec, Neg, classify, desugar, FormulaClass,
    mec_enumerate, subformulas, Atom,
)
from .kripke import PossibilisticModel, World
from .semantics import SemanticsVariant, _Evaluator, possibility


@dataclass
class PossibilityAssignment:
    n: int
    atoms: tuple[str, ...]
    table: dict[tuple[int, ...], TruthValue]  # keyed by numerator vectors

    def __post_init__(self):
        self.atoms = tuple(sorted(self.atoms))

    def mecs(self) -> list[Mec]:
        return mec_enumerate(self.atoms, self.n)

    def value(self, mec: Mec) -> TruthValue:
        return self.table[tuple(v.num for v in mec.values)]

    def validate(self) -> list[str]:
        problems = []
        keys = {tuple(v.num for v in m.values) for m in self.mecs()}
        missing = keys - set(self.table)
        extra = set(self.table) - keys
        if missing:
            problems.append(f"table misses {len(missing)} mecs")
        if extra:
            problems.append(f"table has {len(extra)} entries for unknown mecs")
        if not extra and not missing:
            if max(v.num for v in self.table.values()) != self.n - 1:
                problems.append("not normalized: no mec has possibility 1")
        return problems


def _prop_value(f: Formula, env: dict[str, int], n: int) -> int:
    """Propositional value under a numerator-valued environment."""
    from . import formula as F

    top = n - 1
    match f:
        case F.Atom(name):
            if name == F.TOP_ATOM and name not in env:
                return 0
            if name not in env:
                raise UnknownAtom(f"atom {name!r} is not declared in the assignment")
            return env[name]
        case F.Neg(a):
            return top - _prop_value(a, env, n)
        case F.Imp(a, b):
            return min(top, top - _prop_value(a, env, n) + _prop_value(b, env, n))
        case F.Min(a, b):
            return min(_prop_value(a, env, n), _prop_value(b, env, n))
        case F.Max(a, b):
            return max(_prop_value(a, env, n), _prop_value(b, env, n))
        case F.SConj(a, b):
            return max(0, _prop_value(a, env, n) + _prop_value(b, env, n) - top)
        case F.SDisj(a, b):
            return min(top, _prop_value(a, env, n) + _prop_value(b, env, n))
        case F.Iff(a, b):
            return top - abs(_prop_value(a, env, n) - _prop_value(b, env, n))
        case F.Coef(i, a):
            return top if _prop_value(a, env, n) == i.num else 0
    raise UnknownAtom("measures are defined for modal-free formulas only")


def _value_at(f: Formula, nums: tuple[int, ...], atoms: tuple[str, ...], n: int) -> int:
    return _prop_value(desugar(f), dict(zip(atoms, nums)), n)


def measure_of(a: PossibilityAssignment, f: Formula) -> TruthValue:
    """Pi(f) via the coefficient decomposition Pi(f) = max_i (i /\\ Pi((i)f)).

    Pi of a coefficient slice is the max table value over mecs whose induced
    valuation makes the slice true.
    """
    core = desugar(f)
    vals = {key: _prop_value(core, dict(zip(a.atoms, key)), a.n) for key in a.table}
    best = 0
    for i in range(a.n):
        slice_pi = max((v.num for key, v in a.table.items() if vals[key] == i), default=0)
        best = max(best, min(i, slice_pi))
    return tv(best, a.n)


@dataclass
class MeasureReport:
    checked: int
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_measure(a: PossibilityAssignment, family=None, equivalent_pairs=None) -> MeasureReport:
    """Verify the possibility axioms over a formula family.

    Checks normalization, Pi(True)=1 / Pi(False)=0, the max-decomposition of
    disjunctions, agreement on supplied equivalent pairs, and the
    coefficient decomposition of every family member.
    """
    from .formula import Top, Bot, Max as FMax, formulas_by_depth, PROP_BINARY, Neg as FNeg, Coef

    violations = list(a.validate())
    checked = 0
    if violations:
        return MeasureReport(checked, violations)
    n = a.n
    if family is None:
        unary = [FNeg] + [lambda f, v=v: Coef(v, f) for v in all_values(n)]
        family = list(formulas_by_depth(a.atoms, 2, unary, [FMax, *PROP_BINARY[:2]]))
        if len(family) > 400:
            family = family[:400]

    if measure_of(a, Top()).num != n - 1:
        violations.append("Pi(True) != 1")
    if measure_of(a, Bot()).num != 0:
        violations.append("Pi(False) != 0")
    checked += 2

    for f in family:
        checked += 1
        # disjunction decomposition against every other family member is
        # quadratic; pair each formula with its successor instead
        pi_f = measure_of(a, f)
        decomposed = max(min(i, measure_of(a, Coef(tv(i, n), f)).num) for i in range(n))
        if decomposed != pi_f.num:
            violations.append(f"coefficient decomposition fails for {f}")
    for f, g in zip(family, family[1:]):
        checked += 1
        lhs = measure_of(a, FMax(f, g)).num
        rhs = max(measure_of(a, f).num, measure_of(a, g).num)
        if lhs != rhs:
            violations.append(f"Pi(A \\/ B) != max for A={f}, B={g}")
    for f, g in equivalent_pairs or []:
        checked += 1
        if measure_of(a, f).num != measure_of(a, g).num:
            violations.append(f"equivalent formulas get different possibility: {f} vs {g}")
    return MeasureReport(checked, violations)


def reconstruct_model(a: PossibilityAssignment) -> PossibilisticModel:
    """One world per mec, with pi taken from the table."""
    problems = a.validate()
    if problems:
        raise ValueError("invalid assignment: " + "; ".join(problems))
    worlds = []
    for i, mec in enumerate(a.mecs()):
        key = tuple(v.num for v in mec.values)
        worlds.append(World(f"w{i}", mec.as_dict(), a.table[key]))
    return PossibilisticModel(a.n, a.atoms, worlds)


def measure_from_model(m: PossibilisticModel) -> PossibilityAssignment:
    """Read off Pi of every mec."""
    table = {}
    for mec in mec_enumerate(m.atoms, m.n):
        key = tuple(v.num for v in mec.values)
        table[key] = possibility(mec.formula(), m)
    return PossibilityAssignment(m.n, m.atoms, table)


# ---------------------------------------------------------------------------
# JSON assignment files.


def assignment_to_dict(a: PossibilityAssignment) -> dict:
    rows = []
    for mec in a.mecs():
        key = tuple(v.num for v in mec.values)
        rows.append({
            "mec": {atom: str(v) for atom, v in zip(a.atoms, mec.values)},
            "pi": str(a.table[key]),
        })
    return {"n": a.n, "atoms": list(a.atoms), "table": rows}


def assignment_from_dict(data: dict) -> PossibilityAssignment:
    n = data["n"]
    atoms = tuple(sorted(data["atoms"]))
    table = {}
    for row in data["table"]:
        key = tuple(parse_value(row["mec"][a], n).num for a in atoms)
        table[key] = parse_value(row["pi"], n)
    return PossibilityAssignment(n, atoms, table)


def load_assignment(path) -> PossibilityAssignment:
    with open(path, encoding="utf-8") as fh:
        return assignment_from_dict(json.load(fh))


def save_assignment(a: PossibilityAssignment, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(assignment_to_dict(a), fh, indent=2)
        fh.write("\n")
