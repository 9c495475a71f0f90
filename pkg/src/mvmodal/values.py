"""Exact arithmetic over the n-valued Lukasiewicz truth-value chain.

A truth value is k/(n-1) for k in 0..n-1, stored as the integer numerator
plus the resolution n.  All operations are integer-exact; there are no
floats anywhere, so tautology checks are bit-exact.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ResolutionMismatch


@dataclass(frozen=True)
class TruthValue:
    """Element num/(n-1) of the n-valued chain."""

    num: int
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"resolution must be >= 2, got {self.n}")
        if not 0 <= self.num <= self.n - 1:
            raise ValueError(f"numerator {self.num} out of range 0..{self.n - 1}")

    @property
    def denom(self) -> int:
        return self.n - 1

    def __str__(self) -> str:
        return f"{self.num}/{self.denom}"

    def __repr__(self) -> str:
        return f"TruthValue({self.num}/{self.denom})"

    def _check(self, other: "TruthValue") -> None:
        if self.n != other.n:
            raise ResolutionMismatch(f"cannot combine values over {self.n} and {other.n} truth values")

    def __le__(self, other: "TruthValue") -> bool:
        self._check(other)
        return self.num <= other.num

    def __lt__(self, other: "TruthValue") -> bool:
        self._check(other)
        return self.num < other.num

    def __ge__(self, other: "TruthValue") -> bool:
        return other <= self

    def __gt__(self, other: "TruthValue") -> bool:
        return other < self


def tv(num: int, n: int) -> TruthValue:
    return TruthValue(num, n)


def zero(n: int) -> TruthValue:
    return TruthValue(0, n)


def one(n: int) -> TruthValue:
    return TruthValue(n - 1, n)


def all_values(n: int) -> list[TruthValue]:
    """The chain 0, 1/(n-1), ..., 1 in ascending order."""
    return [TruthValue(k, n) for k in range(n)]


def parse_value(text: str, n: int) -> TruthValue:
    """Parse "k/d" with d = n-1; bare "0" and "1" are also accepted."""
    text = text.strip()
    if text == "0":
        return zero(n)
    if text == "1":
        return one(n)
    if "/" not in text:
        raise ValueError(f"cannot parse truth value {text!r}")
    num_s, den_s = text.split("/", 1)
    try:
        num, den = int(num_s), int(den_s)
    except ValueError:
        raise ValueError(f"cannot parse truth value {text!r}") from None
    if den != n - 1:
        raise ValueError(f"truth value {text!r} has denominator {den}, expected {n - 1}")
    return TruthValue(num, n)


def neg(x: TruthValue) -> TruthValue:
    """1 - x."""
    return TruthValue(x.denom - x.num, x.n)


def imp(x: TruthValue, y: TruthValue) -> TruthValue:
    """Lukasiewicz implication min(1 - x + y, 1)."""
    x._check(y)
    return TruthValue(min(x.denom - x.num + y.num, x.denom), x.n)


def tmin(x: TruthValue, y: TruthValue) -> TruthValue:
    x._check(y)
    return TruthValue(min(x.num, y.num), x.n)


def tmax(x: TruthValue, y: TruthValue) -> TruthValue:
    x._check(y)
    return TruthValue(max(x.num, y.num), x.n)


def sconj(x: TruthValue, y: TruthValue) -> TruthValue:
    """Strong conjunction max(0, x + y - 1)."""
    x._check(y)
    return TruthValue(max(0, x.num + y.num - x.denom), x.n)


def sdisj(x: TruthValue, y: TruthValue) -> TruthValue:
    """Strong disjunction min(1, x + y)."""
    x._check(y)
    return TruthValue(min(x.denom, x.num + y.num), x.n)


def equivalence(x: TruthValue, y: TruthValue) -> TruthValue:
    """min(I(x,y), I(y,x)), i.e. 1 - |x - y|."""
    return tmin(imp(x, y), imp(y, x))


#: Binary connective interpretations, keyed by the names used in axiom
#: parameters and the formula grammar.
TRUTH_FUNCTIONS = {
    "min": tmin,
    "max": tmax,
    "sconj": sconj,
    "sdisj": sdisj,
    "imp": imp,
    "iff": equivalence,
}
