"""Hilbert-style schema catalogs and proof checking.

Schemas are first-order patterns over formula metavariables plus explicit
parameters (coefficient indices, the connective of the coefficient
composition axiom, a mec, an atom list for the big-disjunction axiom).
Catalog entries marked as lemmas belong to the soundness regression
suites but are not usable as axioms in proofs.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

from .errors import UnknownAtom
from .values import TRUTH_FUNCTIONS, TruthValue, all_values, one, parse_value, zero
from . import values as V
from .formula import (
    Atom, Bot, Box, Coef, CoefCmp, Dia, Formula, FormulaClass, Iff, Imp, Max,
    Mec, Min, Neg, SConj, SDisj, Top, big_max, big_min, classify, desugar,
    mec_enumerate, parse, prod_of, sum_of, to_text,
)

SYSTEMS = ("ln", "mvs5", "mvkd45", "qfl2")

_STAR_NODES = {
    "min": Min, "max": Max, "sconj": SConj, "sdisj": SDisj, "imp": Imp, "iff": Iff,
}


@dataclass(frozen=True)
class Schema:
    id: str
    metavars: tuple[str, ...]
    build: Callable
    params: tuple[str, ...] = ()
    boolean_vars: tuple[str, ...] = ()  # metavars restricted to B0/B-formulas
    lemma: bool = False
    description: str = ""


class SideConditionError(ValueError):
    pass


def _require_value(params, name, n):
    v = params.get(name)
    if not isinstance(v, TruthValue):
        raise ValueError(f"schema parameter {name!r} must be a truth value")
    if v.n != n:
        raise ValueError(f"schema parameter {name!r} has resolution {v.n}, expected {n}")
    return v


def _schemas() -> list[Schema]:
    out = []

    def add(id, metavars, build, **kw):
        out.append(Schema(id, tuple(metavars), build, **kw))

    A, B, C = (lambda s: s["A"]), (lambda s: s["B"]), (lambda s: s["C"])

    add("a1", "AB", lambda s, p, n: Imp(A(s), Imp(B(s), A(s))),
        description="A -> (B -> A)")
    add("a2", "ABC", lambda s, p, n: Imp(Imp(A(s), B(s)), Imp(Imp(B(s), C(s)), Imp(A(s), C(s)))),
        description="suffixing")
    add("a3", "AB", lambda s, p, n: Imp(Imp(Neg(B(s)), Neg(A(s))), Imp(A(s), B(s))),
        description="contraposition")
    add("a4", "AB", lambda s, p, n: Imp(Imp(Imp(A(s), B(s)), B(s)), Imp(Imp(B(s), A(s)), A(s))),
        description="commutativity of the derived max")
    add("sum", "A", lambda s, p, n: Imp(sum_of(n, A(s)), sum_of(n - 1, A(s))),
        description="n-fold strong disjunction collapses to (n-1)-fold")

    def build_div(s, p, n):
        m = p.get("m")
        if not isinstance(m, int) or not 1 < m < n - 1:
            raise ValueError(f"parameter m must be an integer with 1 < m < {n - 1}")
        if (n - 1) % (m - 1) == 0:
            raise ValueError(f"m - 1 = {m - 1} divides n - 1 = {n - 1}; schema not applicable")
        inner = SDisj(prod_of(m, A(s)), SConj(Neg(A(s)), sum_of(m - 1, A(s))))
        return sum_of(n - 1, inner)

    add("div", "A", build_div, params=("m",), description="divisibility family")

    add("coef-cover", "A", lambda s, p, n: big_max([Coef(i, A(s)) for i in all_values(n)]),
        description="some coefficient applies")
    add("coef-excl", "A",
        lambda s, p, n: big_min([
            Neg(Min(Coef(i, A(s)), Coef(j, A(s))))
            for k, i in enumerate(all_values(n)) for j in all_values(n)[k + 1:]
        ]),
        description="coefficients are mutually exclusive")
    add("coef-neg", "A", lambda s, p, n: Imp(Coef(_require_value(p, "i", n), A(s)),
                                             Coef(V.neg(_require_value(p, "i", n)), Neg(A(s)))),
        params=("i",), description="(i)A -> (1-i)!A")

    def build_coef_fn(s, p, n):
        i, j = _require_value(p, "i", n), _require_value(p, "j", n)
        star = p.get("star")
        if star not in _STAR_NODES:
            raise ValueError(f"parameter star must be one of {sorted(_STAR_NODES)}")
        t = TRUTH_FUNCTIONS[star](i, j)
        return Imp(Min(Coef(i, A(s)), Coef(j, B(s))), Coef(t, _STAR_NODES[star](A(s), B(s))))

    add("coef-fn", "AB", build_coef_fn, params=("i", "j", "star"),
        description="coefficients compose through every connective")
    add("coef-one", "A", lambda s, p, n: Imp(Coef(one(n), A(s)), A(s)),
        description="(1)A -> A")
    add("bool-coef", "A", lambda s, p, n: Iff(A(s), Coef(one(n), A(s))),
        boolean_vars=("A",), description="A <-> (1)A for Boolean formulas")
    add("bool-dist", "ABC",
        lambda s, p, n: Imp(Imp(A(s), Imp(B(s), C(s))), Imp(Imp(A(s), B(s)), Imp(A(s), C(s)))),
        boolean_vars=("A", "B", "C"), description="distribution, Boolean formulas only")

    # modal axioms shared or per system; filtered by the catalogs below
    add("k", "AB", lambda s, p, n: Imp(Box(Imp(A(s), B(s))), Imp(Box(A(s)), Box(B(s)))),
        description="box distributes over implication")
    add("t", "A", lambda s, p, n: Imp(Box(A(s)), A(s)), description="box A -> A")
    add("four", "A", lambda s, p, n: Imp(Box(A(s)), Box(Box(A(s)))),
        description="box A -> box box A")
    add("five", "A", lambda s, p, n: Imp(Dia(A(s)), Box(Dia(A(s)))),
        description="dia A -> box dia A")
    add("fitting", "A",
        lambda s, p, n: Iff(CoefCmp(">=", _require_value(p, "i", n), Box(A(s))),
                            Box(CoefCmp(">=", _require_value(p, "i", n), A(s)))),
        params=("i",), description="(>=i) commutes with box")

    add("box-idem", "A", lambda s, p, n: Iff(Box(A(s)), Box(Box(A(s)))),
        description="box A <-> box box A")
    add("dia-idem", "A", lambda s, p, n: Iff(Dia(A(s)), Box(Dia(A(s)))),
        description="dia A <-> box dia A")
    add("jbox", "A", lambda s, p, n: Iff(Coef(_require_value(p, "j", n), Box(A(s))),
                                         Box(Coef(_require_value(p, "j", n), Box(A(s))))),
        params=("j",), description="(j)box A <-> box (j)box A")
    add("jdia", "A", lambda s, p, n: Iff(Coef(_require_value(p, "j", n), Dia(A(s))),
                                         Box(Coef(_require_value(p, "j", n), Dia(A(s))))),
        params=("j",), description="(j)dia A <-> box (j)dia A")
    add("dtrue", "", lambda s, p, n: Coef(one(n), Dia(Top())),
        description="(1)dia top")

    def _mec_param(p, n):
        e = p.get("E")
        if not isinstance(e, Mec):
            raise ValueError("schema parameter E must be a mec")
        if any(v.n != n for v in e.values):
            raise ValueError(f"mec resolution differs from {n}")
        return e

    def build_mec_le(s, p, n):
        j, e = _require_value(p, "j", n), _mec_param(p, n)
        return Imp(Min(Coef(j, Dia(A(s))), e.formula()),
                   CoefCmp("<=", j, Min(A(s), Dia(e.formula()))))

    add("mec-le", "A", build_mec_le, params=("j", "E"),
        description="((j)dia A /\\ E) -> (<=j)(A /\\ dia E)")

    def _mec_dia(s, p, n, ge_bound):
        j = _require_value(p, "j", n)
        atoms = p.get("atoms")
        if not atoms:
            raise ValueError("schema parameter atoms (for the mec disjunction) is required")
        if not ge_bound and j.num == 0:
            raise ValueError("parameter j must be positive for this bound variant")
        disjuncts = []
        for e in mec_enumerate(atoms, n):
            inner = Dia(Min(e.formula(), Coef(j, Min(A(s), Dia(e.formula())))))
            if ge_bound:
                disjuncts.append(CoefCmp(">=", j, inner))
            else:
                disjuncts.append(CoefCmp(">", zero(n), inner))
        return Imp(Coef(j, Dia(A(s))), big_max(disjuncts))

    add("mec-dia", "A", lambda s, p, n: _mec_dia(s, p, n, False), params=("j", "atoms"),
        description="(j)dia A -> some mec witnesses it with positive possibility")
    add("mec-dia-ge", "A", lambda s, p, n: _mec_dia(s, p, n, True), params=("j", "atoms"),
        lemma=True, description="strengthened bound variant of mec-dia")

    # lemma families used by the regression suites only
    add("l49", "C",
        lambda s, p, n: Imp(Coef(_require_value(p, "i", n), Dia(C(s))),
                            Min(Box(CoefCmp("<=", _require_value(p, "i", n), C(s))),
                                Dia(Coef(_require_value(p, "i", n), C(s))))),
        params=("i",), lemma=True, description="(i)dia C pins box/dia bounds")
    add("l53", "A",
        lambda s, p, n: Imp(CoefCmp(">", zero(n), Dia(Min(Coef(_require_value(p, "j", n), A(s)),
                                                          _mec_param(p, n).formula()))),
                            Imp(_mec_param(p, n).formula(), Coef(_require_value(p, "j", n), A(s)))),
        params=("j", "E"), lemma=True,
        description="a possible mec fixes the coefficient of A everywhere")
    add("r61", "C",
        lambda s, p, n: Iff(CoefCmp(">=", _require_value(p, "i", n), Box(C(s))),
                            CoefCmp(">=", _require_value(p, "i", n),
                                    Box(CoefCmp(">=", _require_value(p, "i", n), C(s))))),
        params=("i",), lemma=True, description="candidate mec-free tautology")

    add("qpl-total", "AB", lambda s, p, n: Max(Comp_(A(s), B(s)), Comp_(B(s), A(s))),
        lemma=True, description="comparison is total")
    add("qpl-mono", "ABC",
        lambda s, p, n: Imp(Comp_(A(s), B(s)), Comp_(Max(A(s), C(s)), Max(B(s), C(s)))),
        lemma=True, description="comparison is monotone under disjunction")
    add("qpl-top", "A", lambda s, p, n: Comp_(A(s), Top()), lemma=True,
        description="everything is at most as possible as truth")
    add("qpl-bot", "", lambda s, p, n: Neg(Comp_(Top(), Bot())), lemma=True,
        description="truth is not at most as possible as falsity")
    return out


from .formula import Comp as Comp_  # noqa: E402  (used by the QFL2 builders above)

_LN_IDS = ("a1", "a2", "a3", "a4", "sum", "div", "coef-cover", "coef-excl",
           "coef-neg", "coef-fn", "coef-one", "bool-coef", "bool-dist")
_MVS5_IDS = _LN_IDS + ("k", "t", "four", "five", "fitting", "l49")
_MVKD45_IDS = _LN_IDS + ("k", "box-idem", "dia-idem", "jbox", "jdia", "dtrue",
                         "mec-le", "mec-dia", "mec-dia-ge", "l53", "r61")
_QFL2_IDS = ("qpl-total", "qpl-mono", "qpl-top", "qpl-bot")

_ALL = {s.id: s for s in _schemas()}

CATALOG: dict[str, dict[str, Schema]] = {
    "ln": {i: _ALL[i] for i in _LN_IDS},
    "mvs5": {i: _ALL[i] for i in _MVS5_IDS},
    "mvkd45": {i: _ALL[i] for i in _MVKD45_IDS},
    "qfl2": {i: _ALL[i] for i in _QFL2_IDS},
}


def instantiate(schema: Schema, subst: dict[str, Formula], params: dict, n: int,
                system: str = "ln") -> Formula:
    """Ground instance of a schema; raises on side-condition violations."""
    missing = set(schema.metavars) - set(subst)
    if missing:
        raise ValueError(f"substitution misses metavariables {sorted(missing)}")
    required = FormulaClass.B0 if system == "ln" else FormulaClass.BFORMULA
    for var in schema.boolean_vars:
        if required not in classify(subst[var]):
            raise SideConditionError(
                f"metavariable {var} of schema {schema.id} needs a "
                f"{'B0' if system == 'ln' else 'B'}-formula, got {to_text(subst[var])}")
    return schema.build(subst, params or {}, n)


# ---------------------------------------------------------------------------
# Proofs.


@dataclass
class ProofLine:
    formula: Formula
    just: dict


@dataclass
class Proof:
    system: str
    n: int
    premises: list[Formula] = field(default_factory=list)
    lines: list[ProofLine] = field(default_factory=list)


@dataclass
class ProofResult:
    ok: bool
    line: int | None = None
    reason: str | None = None

    def __str__(self):
        return "ok" if self.ok else f"line {self.line}: {self.reason}"


def check_proof(p: Proof) -> ProofResult:
    """Verify every line; premises disable necessitation."""
    if p.system not in ("ln", "mvs5", "mvkd45"):
        return ProofResult(False, None, f"unknown system {p.system!r}")
    if not p.lines:
        return ProofResult(False, None, "proof has no lines")
    catalog = CATALOG[p.system]
    if p.system != "ln":
        for q in p.premises:
            if FormulaClass.BFORMULA not in classify(q):
                return ProofResult(False, None,
                                   f"premise {to_text(q)} is not a B-formula")
    premises = [desugar(q) for q in p.premises]
    derived: list[Formula] = []

    for idx, line in enumerate(p.lines, start=1):
        cur = desugar(line.formula)
        just = line.just
        kind = next((k for k in ("premise", "axiom", "mp", "nec", "coef1") if k in just), None)

        def fail(reason):
            return ProofResult(False, idx, reason)

        if kind == "premise":
            if cur not in premises:
                return fail("formula is not among the premises")
        elif kind == "axiom":
            schema = catalog.get(just["axiom"])
            if schema is None or schema.lemma:
                return fail(f"no axiom schema {just['axiom']!r} in system {p.system}")
            try:
                subst = {v: parse(s, p.n) for v, s in (just.get("subst") or {}).items()}
                inst = instantiate(schema, subst, _parse_params(just.get("params"), p.n), p.n,
                                   p.system)
            except (ValueError, KeyError) as exc:
                return fail(f"bad instantiation: {exc}")
            if desugar(inst) != cur:
                return fail(f"formula is not the stated instance of {schema.id} "
                            f"(expected {to_text(inst)})")
        elif kind == "mp":
            refs = just["mp"]
            if len(refs) != 2 or any(not 1 <= r < idx for r in refs):
                return fail("modus ponens needs two earlier line numbers")
            a, b = derived[refs[0] - 1], derived[refs[1] - 1]
            if b != Imp(a, cur) and a != Imp(b, cur):
                return fail("modus ponens does not yield this formula from the cited lines")
        elif kind == "nec":
            if premises:
                return fail("necessitation is not available when premises are present")
            if p.system == "ln":
                return fail("necessitation is not a rule of ln")
            ref = just["nec"]
            if not 1 <= ref < idx:
                return fail("necessitation needs an earlier line number")
            if cur != Box(derived[ref - 1]):
                return fail("formula is not box of the cited line")
        elif kind == "coef1":
            if p.system == "ln":
                return fail("the coefficient rule is not a rule of ln")
            ref = just["coef1"]
            if not 1 <= ref < idx:
                return fail("the coefficient rule needs an earlier line number")
            if cur != Coef(one(p.n), derived[ref - 1]):
                return fail("formula is not (1) applied to the cited line")
        else:
            return fail(f"unknown justification {just!r}")
        derived.append(cur)
    return ProofResult(True)


def _parse_params(raw: dict | None, n: int) -> dict:
    if not raw:
        return {}
    out = {}
    for key, value in raw.items():
        if key in ("i", "j"):
            out[key] = parse_value(value, n) if isinstance(value, str) else value
        elif key == "E":
            if isinstance(value, dict):
                atoms = tuple(sorted(value))
                out[key] = Mec(atoms, tuple(parse_value(value[a], n) for a in atoms))
            else:
                out[key] = value
        elif key == "atoms":
            out[key] = tuple(value)
        else:
            out[key] = value
    return out


@dataclass
class SpotcheckReport:
    lines: list[tuple[int, bool, int]]  # line number, tautology?, models checked
    complete: bool

    @property
    def all_tautologies(self) -> bool:
        return self.complete and all(ok for _, ok, _ in self.lines)


def soundness_spotcheck(p: Proof, model_budget: int = 2_000_000) -> SpotcheckReport:
    """Exhaustively verify every line of a premise-free proof as a 1-tautology."""
    from . import decide  # local import; decide depends on this module's catalog

    if p.premises:
        raise ValueError("soundness spotchecks apply to premise-free proofs only")
    result = check_proof(p)
    lines = []
    spent = 0
    for idx, line in enumerate(p.lines, start=1):
        from .formula import atoms_of
        atoms = atoms_of(line.formula) or ["q"]
        if p.system == "ln":
            verdict = decide.is_ln_tautology(line.formula, atoms, p.n)
        else:
            from .semantics import SemanticsVariant
            variant = SemanticsVariant.MVS5 if p.system == "mvs5" else SemanticsVariant.MVKD45
            verdict = decide.is_one_tautology(line.formula, variant, atoms, p.n)
        spent += verdict.models_checked
        lines.append((idx, verdict.is_tautology, verdict.models_checked))
        if spent > model_budget:
            return SpotcheckReport(lines, complete=False)
    return SpotcheckReport(lines, complete=True)


# ---------------------------------------------------------------------------
# Proof files.


def proof_from_dict(data: dict) -> Proof:
    n = data["n"]
    premises = [parse(s, n) for s in data.get("premises", [])]
    lines = [ProofLine(parse(entry["formula"], n), entry["just"]) for entry in data["lines"]]
    return Proof(data["system"], n, premises, lines)


def load_proof(path) -> Proof:
    with open(path, encoding="utf-8") as fh:
        return proof_from_dict(json.load(fh))
