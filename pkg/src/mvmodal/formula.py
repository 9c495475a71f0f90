"""Formula ASTs, parser, printer, sugar expansion and syntactic classifiers.

One AST covers all three languages: the propositional fragment (Form0),
the modal languages of MVS5/MVKD45 (box/dia), and QFL2 (the binary
comparison connective, written ``<|`` in concrete syntax).  Derived forms
(top/bot, coefficient ranges, the p-guarded modalities, the necessity
comparison ``<|n``) are kept as distinguished nodes until `desugar`.
"""
from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass

from .errors import FormulaSyntaxError
from .values import TruthValue, all_values, one, parse_value

#: Reserved atom naming the possibility distribution in p-extended models.
DEFAULT_RESERVED = "p@"
#: Placeholder atom used when expanding the truth constant; any atom works
#: since x -> x is 1 for every x.
TOP_ATOM = "t@"


class Formula:
    """Base class; all nodes are frozen dataclasses and safe to share."""

    __slots__ = ()

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Neg(Formula):
    a: Formula


@dataclass(frozen=True)
class Imp(Formula):
    a: Formula
    b: Formula


@dataclass(frozen=True)
class Min(Formula):
    a: Formula
    b: Formula


@dataclass(frozen=True)
class Max(Formula):
    a: Formula
    b: Formula


@dataclass(frozen=True)
class SConj(Formula):
    a: Formula
    b: Formula


@dataclass(frozen=True)
class SDisj(Formula):
    a: Formula
    b: Formula


@dataclass(frozen=True)
class Iff(Formula):
    a: Formula
    b: Formula


@dataclass(frozen=True)
class Coef(Formula):
    """(i)A: value 1 when A evaluates exactly to i, else 0."""

    i: TruthValue
    a: Formula


@dataclass(frozen=True)
class Box(Formula):
    a: Formula


@dataclass(frozen=True)
class Dia(Formula):
    a: Formula


@dataclass(frozen=True)
class Comp(Formula):
    """A <| B: B is at least as possible as A."""

    a: Formula
    b: Formula


# ---------------------------------------------------------------------------
# Sugar nodes, expanded by desugar().


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class CoefCmp(Formula):
    """(>=i)A and friends: disjunction of (j)A over all j in the range."""

    rel: str  # one of >= <= > <
    i: TruthValue
    a: Formula


@dataclass(frozen=True)
class DiaP(Formula):
    a: Formula


@dataclass(frozen=True)
class BoxP(Formula):
    a: Formula


@dataclass(frozen=True)
class CompP(Formula):
    a: Formula
    b: Formula


@dataclass(frozen=True)
class NComp(Formula):
    """Necessity comparison, the negated dual of the p-guarded comparison."""

    a: Formula
    b: Formula


CORE_BINARY = (Imp, Min, Max, SConj, SDisj, Iff)
CONNECTIVES = (Neg,) + CORE_BINARY


def dienes_imp(a: Formula, b: Formula) -> Formula:
    """Dienes implication: !A \\/ B."""
    return Max(Neg(a), b)


def goedel_imp(a: Formula, b: Formula, n: int) -> Formula:
    """Goedel implication: [1](A -> B) \\/ B."""
    return Max(Coef(one(n), Imp(a, b)), b)


def sum_of(k: int, a: Formula) -> Formula:
    """k-fold strong disjunction A |+| ... |+| A."""
    if k < 1:
        raise ValueError("sum needs k >= 1")
    out = a
    for _ in range(k - 1):
        out = SDisj(out, a)
    return out


def prod_of(k: int, a: Formula) -> Formula:
    """k-fold strong conjunction A & ... & A."""
    if k < 1:
        raise ValueError("product needs k >= 1")
    out = a
    for _ in range(k - 1):
        out = SConj(out, a)
    return out


def big_max(parts: list[Formula]) -> Formula:
    """Left-associated \\/ of a nonempty list, or bot for the empty one."""
    if not parts:
        return Bot()
    out = parts[0]
    for p in parts[1:]:
        out = Max(out, p)
    return out


def big_min(parts: list[Formula]) -> Formula:
    if not parts:
        return Top()
    out = parts[0]
    for p in parts[1:]:
        out = Min(out, p)
    return out


# ---------------------------------------------------------------------------
# Maximal elementary conjunctions.


@dataclass(frozen=True)
class Mec:
    """One coefficient value per declared atom: the world-type ⋀(j_i)p_i."""

    atoms: tuple[str, ...]
    values: tuple[TruthValue, ...]

    def __post_init__(self):
        if len(self.atoms) != len(self.values):
            raise ValueError("one value per atom required")

    def value_of(self, atom: str) -> TruthValue:
        return self.values[self.atoms.index(atom)]

    def as_dict(self) -> dict[str, TruthValue]:
        return dict(zip(self.atoms, self.values))

    def formula(self) -> Formula:
        return big_min([Coef(v, Atom(a)) for a, v in zip(self.atoms, self.values)])

    def __str__(self) -> str:
        return to_text(self.formula())


def mec_enumerate(atoms, n: int) -> list[Mec]:
    """All n^m mecs over the (lexicographically ordered) atom list."""
    names = tuple(sorted(atoms))
    if not names:
        raise ValueError("mec enumeration needs a nonempty atom list")
    vals = all_values(n)
    return [Mec(names, combo) for combo in itertools.product(vals, repeat=len(names))]


# ---------------------------------------------------------------------------
# Desugaring.


def desugar(f: Formula, reserved: str = DEFAULT_RESERVED) -> Formula:
    """Expand all sugar nodes; idempotent, output contains core nodes only."""
    d = lambda g: desugar(g, reserved)
    p = Atom(reserved)
    match f:
        case Top():
            return Imp(Atom(TOP_ATOM), Atom(TOP_ATOM))
        case Bot():
            return Neg(Imp(Atom(TOP_ATOM), Atom(TOP_ATOM)))
        case CoefCmp(rel, i, a):
            ops = {">=": lambda j: j >= i, "<=": lambda j: j <= i,
                   ">": lambda j: j > i, "<": lambda j: j < i}
            picked = [j for j in all_values(i.n) if ops[rel](j)]
            return d(big_max([Coef(j, a) for j in picked]))
        case DiaP(a):
            return Dia(Min(p, d(a)))
        case BoxP(a):
            return Box(Max(Neg(p), d(a)))
        case CompP(a, b):
            return Imp(Dia(Min(p, d(a))), Dia(Min(p, d(b))))
        case NComp(a, b):
            return Neg(desugar(CompP(Neg(a), Neg(b)), reserved))
        case Atom(_):
            return f
        case Neg(a):
            return Neg(d(a))
        case Coef(i, a):
            return Coef(i, d(a))
        case Box(a):
            return Box(d(a))
        case Dia(a):
            return Dia(d(a))
        case Imp(a, b) | Min(a, b) | Max(a, b) | SConj(a, b) | SDisj(a, b) | Iff(a, b) | Comp(a, b):
            return type(f)(d(a), d(b))
    raise TypeError(f"not a formula node: {f!r}")


def subformulas(f: Formula):
    """Pre-order traversal of all nodes."""
    yield f
    for attr in ("a", "b"):
        child = getattr(f, attr, None)
        if isinstance(child, Formula):
            yield from subformulas(child)


def atoms_of(f: Formula) -> list[str]:
    """Sorted atom names occurring in f (sugar expanded, placeholder excluded)."""
    names = {g.name for g in subformulas(desugar(f)) if isinstance(g, Atom)}
    names.discard(TOP_ATOM)
    return sorted(names)


# ---------------------------------------------------------------------------
# Classification.


class FormulaClass(enum.Enum):
    FORM0 = "form0"
    B0 = "b0"
    BFORMULA = "bformula"
    MEC = "mec"
    QFL2 = "qfl2"
    MODAL = "modal"
    MIXED = "mixed"


def _is_b(f: Formula) -> bool:
    if isinstance(f, Coef):
        return True
    if isinstance(f, Neg):
        return _is_b(f.a)
    if isinstance(f, CORE_BINARY):
        return _is_b(f.a) and _is_b(f.b)
    return False


def _mec_shape(f: Formula):
    """The (atom, value) list if f is a Min-chain of coefficient atoms, else None."""
    if isinstance(f, Coef) and isinstance(f.a, Atom):
        return [(f.a.name, f.i)]
    if isinstance(f, Min):
        left, right = _mec_shape(f.a), _mec_shape(f.b)
        if left is not None and right is not None:
            return left + right
    return None


def classify(f: Formula, atoms=None) -> set[FormulaClass]:
    """All syntactic classes the (desugared) formula belongs to.

    MEC is only reported when the ambient atom list is given, since
    maximality is relative to the declared atoms.
    """
    g = desugar(f)
    out = set()
    modal_outside = coef_seen = comp_seen = modal_seen = False
    bare_atom = False

    def walk(node, under_coef):
        nonlocal modal_outside, coef_seen, comp_seen, modal_seen, bare_atom
        match node:
            case Atom(_):
                if not under_coef:
                    bare_atom = True
            case Coef(_, a):
                coef_seen = True
                walk(a, True)
            case Box(a) | Dia(a):
                modal_seen = True
                if not under_coef:
                    modal_outside = True
                walk(a, under_coef)
            case Comp(a, b):
                comp_seen = True
                walk(a, under_coef)
                walk(b, under_coef)
            case Neg(a):
                walk(a, under_coef)
            case _:
                walk(node.a, under_coef)
                walk(node.b, under_coef)

    walk(g, False)

    if not modal_seen and not comp_seen:
        out.add(FormulaClass.FORM0)
        if not bare_atom:
            out.add(FormulaClass.B0)
    if _is_b(g):
        out.add(FormulaClass.BFORMULA)
    if not coef_seen and not modal_seen:
        out.add(FormulaClass.QFL2)
    if modal_outside and not comp_seen:
        out.add(FormulaClass.MODAL)
    if comp_seen and (coef_seen or modal_seen):
        out.add(FormulaClass.MIXED)
    if atoms is not None:
        shape = _mec_shape(g)
        if shape is not None and [a for a, _ in shape] == sorted(atoms):
            out.add(FormulaClass.MEC)
    return out


# ---------------------------------------------------------------------------
# Parser.

_TOKEN_RE = re.compile(
    r"""\s*(?:
        (?P<lpar>\()|(?P<rpar>\))|
        (?P<lbrack>\[)|(?P<rbrack>\])|
        (?P<iff><->)|(?P<imp>->)|
        (?P<ncomp><\|n(?![A-Za-z0-9_@']))|(?P<comp><\|)|
        (?P<maxop>\\/)|(?P<sdisj>\|\+\|)|
        (?P<minop>/\\)|(?P<sconj>&)|
        (?P<neg>!)|
        (?P<rel>>=|<=|>|<)|
        (?P<slash>/)|
        (?P<int>\d+)|
        (?P<ident>[A-Za-z_][A-Za-z0-9_@']*)
    )""",
    re.VERBOSE,
)

_KEYWORDS = {"box", "dia", "box_p", "dia_p", "top", "bot"}


def _tokenize(text: str):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == m.start():
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise FormulaSyntaxError(f"unexpected character {stripped[0]!r}", pos)
        kind = m.lastgroup
        value = m.group(m.lastgroup)
        if kind == "ident" and value in _KEYWORDS:
            kind = value
        out.append((kind, value, m.start(m.lastgroup)))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, n: int):
        self.tokens = _tokenize(text)
        self.n = n
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise FormulaSyntaxError(f"expected {kind}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> Formula:
        f = self.formula()
        tok = self.peek()
        if tok[0] != "eof":
            raise FormulaSyntaxError(f"trailing input {tok[1]!r}", tok[2])
        return f

    def formula(self) -> Formula:
        left = self.iff()
        kind = self.peek()[0]
        if kind == "comp":
            self.take()
            return Comp(left, self.iff())
        if kind == "ncomp":
            self.take()
            return NComp(left, self.iff())
        return left

    def iff(self) -> Formula:
        out = self.impf()
        while self.peek()[0] == "iff":
            self.take()
            out = Iff(out, self.impf())
        return out

    def impf(self) -> Formula:
        left = self.orf()
        if self.peek()[0] == "imp":
            self.take()
            return Imp(left, self.impf())
        return left

    def orf(self) -> Formula:
        out = self.andf()
        while self.peek()[0] in ("maxop", "sdisj"):
            kind, _, _ = self.take()
            rhs = self.andf()
            out = Max(out, rhs) if kind == "maxop" else SDisj(out, rhs)
        return out

    def andf(self) -> Formula:
        out = self.unary()
        while self.peek()[0] in ("minop", "sconj"):
            kind, _, _ = self.take()
            rhs = self.unary()
            out = Min(out, rhs) if kind == "minop" else SConj(out, rhs)
        return out

    def unary(self) -> Formula:
        kind, value, pos = self.peek()
        if kind == "neg":
            self.take()
            return Neg(self.unary())
        if kind == "lbrack":
            self.take()
            rel = None
            if self.peek()[0] == "rel":
                rel = self.take()[1]
            num_tok = self.take("int")
            self.take("slash")
            den_tok = self.take("int")
            self.take("rbrack")
            num, den = int(num_tok[1]), int(den_tok[1])
            if den != self.n - 1:
                raise FormulaSyntaxError(
                    f"coefficient denominator must be {self.n - 1}, got {den}", den_tok[2])
            try:
                i = TruthValue(num, self.n)
            except ValueError as exc:
                raise FormulaSyntaxError(str(exc), num_tok[2]) from None
            arg = self.unary()
            return Coef(i, arg) if rel is None else CoefCmp(rel, i, arg)
        if kind in ("box", "dia", "box_p", "dia_p"):
            self.take()
            arg = self.unary()
            return {"box": Box, "dia": Dia, "box_p": BoxP, "dia_p": DiaP}[kind](arg)
        if kind == "top":
            self.take()
            return Top()
        if kind == "bot":
            self.take()
            return Bot()
        if kind == "ident":
            self.take()
            return Atom(value)
        if kind == "lpar":
            self.take()
            f = self.formula()
            self.take("rpar")
            return f
        raise FormulaSyntaxError(f"expected a formula, found {value or 'end of input'!r}", pos)


def parse(text: str, n: int) -> Formula:
    """Parse concrete syntax; sugar is preserved as distinguished nodes."""
    return _Parser(text, n).parse()


# ---------------------------------------------------------------------------
# Printer.

_COMP, _IFF, _IMP, _OR, _AND, _UN, _ATOM = range(7)


def _level(f: Formula) -> int:
    match f:
        case Comp(_, _) | NComp(_, _) | CompP(_, _):
            return _COMP
        case Iff(_, _):
            return _IFF
        case Imp(_, _):
            return _IMP
        case Max(_, _) | SDisj(_, _):
            return _OR
        case Min(_, _) | SConj(_, _):
            return _AND
        case Atom(_) | Top() | Bot():
            return _ATOM
        case _:
            return _UN


def _emit(f: Formula, minlevel: int) -> str:
    text = _emit_raw(f)
    if _level(f) < minlevel:
        return f"({text})"
    return text


def _emit_raw(f: Formula) -> str:
    match f:
        case Atom(name):
            return name
        case Top():
            return "top"
        case Bot():
            return "bot"
        case Neg(a):
            return "!" + _emit(a, _UN)
        case Coef(i, a):
            return f"[{i}]" + _emit(a, _UN)
        case CoefCmp(rel, i, a):
            return f"[{rel}{i}]" + _emit(a, _UN)
        case Box(a):
            return "box " + _emit(a, _UN)
        case Dia(a):
            return "dia " + _emit(a, _UN)
        case BoxP(a):
            return "box_p " + _emit(a, _UN)
        case DiaP(a):
            return "dia_p " + _emit(a, _UN)
        case Imp(a, b):
            return f"{_emit(a, _OR)} -> {_emit(b, _IMP)}"
        case Iff(a, b):
            return f"{_emit(a, _IFF)} <-> {_emit(b, _IMP)}"
        case Max(a, b):
            return f"{_emit(a, _OR)} \\/ {_emit(b, _AND)}"
        case SDisj(a, b):
            return f"{_emit(a, _OR)} |+| {_emit(b, _AND)}"
        case Min(a, b):
            return f"{_emit(a, _AND)} /\\ {_emit(b, _UN)}"
        case SConj(a, b):
            return f"{_emit(a, _AND)} & {_emit(b, _UN)}"
        case Comp(a, b):
            return f"{_emit(a, _IFF)} <| {_emit(b, _IFF)}"
        case NComp(a, b):
            return f"{_emit(a, _IFF)} <|n {_emit(b, _IFF)}"
        case CompP(a, b):
            # no concrete token of its own; print the desugarable reading
            return f"dia_p {_emit(a, _UN)} -> dia_p {_emit(b, _UN)}"
    raise TypeError(f"not a formula node: {f!r}")


def to_text(f: Formula) -> str:
    """Canonical concrete syntax; parse(to_text(f)) == f for CompP-free trees."""
    return _emit(f, 0)


# ---------------------------------------------------------------------------
# Formula generation (enumeration pools and random sampling).

QFL2_BINARY = (Imp, Min, Max, SConj, SDisj, Iff, Comp)
PROP_BINARY = (Imp, Min, Max, SConj, SDisj, Iff)


def formulas_by_size(atoms, max_size: int, unary, binary):
    """All ASTs with at most max_size nodes, grouped sizes ascending."""
    leaves = [Atom(a) for a in atoms]
    by_size = {1: list(leaves)}
    for size in range(2, max_size + 1):
        bucket = []
        for op in unary:
            bucket.extend(op(f) for f in by_size.get(size - 1, ()))
        for op in binary:
            for lsize in range(1, size - 1):
                rsize = size - 1 - lsize
                for a in by_size.get(lsize, ()):
                    for b in by_size.get(rsize, ()):
                        bucket.append(op(a, b))
        by_size[size] = bucket
    for size in range(1, max_size + 1):
        yield from by_size.get(size, ())


def formulas_by_depth(atoms, max_depth: int, unary, binary):
    """All ASTs of depth at most max_depth (atoms have depth 0)."""
    newest = [Atom(a) for a in atoms]
    shallower: list[Formula] = []
    yield from newest
    for _ in range(max_depth):
        fresh = [op(f) for op in unary for f in newest]
        everything = shallower + newest
        for op in binary:
            for a in newest:
                fresh.extend(op(a, b) for b in everything)
            for a in shallower:
                fresh.extend(op(a, b) for b in newest)
        yield from fresh
        shallower = everything
        newest = fresh


def random_formula(rng, atoms, size: int, unary, binary) -> Formula:
    """Random AST with roughly `size` nodes (exact when reachable)."""
    if size <= 1 or (not unary and not binary):
        return Atom(rng.choice(list(atoms)))
    ops = []
    if unary:
        ops.append("u")
    if size >= 3 and binary:
        ops.append("b")
        ops.append("b")  # bias toward branching
    choice = rng.choice(ops)
    if choice == "u":
        return rng.choice(list(unary))(random_formula(rng, atoms, size - 1, unary, binary))
    lsize = rng.randint(1, size - 2)
    op = rng.choice(list(binary))
    return op(
        random_formula(rng, atoms, lsize, unary, binary),
        random_formula(rng, atoms, size - 1 - lsize, unary, binary),
    )


def modal_ops(n: int, with_modal: bool = True, with_coef: bool = True):
    """(unary, binary) constructor pools for generated modal-language formulas."""
    unary = [Neg]
    if with_modal:
        unary += [Box, Dia]
    if with_coef:
        unary += [lambda f, v=v: Coef(v, f) for v in all_values(n)]
    return unary, list(PROP_BINARY)
