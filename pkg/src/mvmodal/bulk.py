"""Vectorized evaluation over canonical model enumerations.

Canonical models are rows over the valuation types of the declared atoms:
entry -1 means the type is not a world; a nonnegative entry is the world's
possibility numerator (or just a presence marker for MVS5 models, where no
distribution exists).  Rows are produced in a fixed order -- support size
ascending, then support lexicographic, then distribution lexicographic --
so the first failing row is well defined and search is deterministic.

This engine exists for speed only; `semantics.eval_formula` is the
reference implementation and every countermodel found here is re-checked
against it by the decide module.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import VariantMismatch
from .formula import (
    Atom, Box, Coef, Comp, Dia, Formula, Iff, Imp, Max, Min, Neg, SConj,
    SDisj, TOP_ATOM,
)
from .kripke import MVS5Model, PossibilisticModel, World, valuation_types
from .values import tv


@dataclass
class TypeSpace:
    """Valuation types over a sorted atom tuple, with per-atom value vectors."""

    atoms: tuple[str, ...]
    n: int

    def __post_init__(self):
        self.atoms = tuple(sorted(self.atoms))
        self.types = valuation_types(self.atoms, self.n)
        self.size = len(self.types)
        arr = np.asarray(self.types, dtype=np.int16).reshape(self.size, len(self.atoms))
        self.columns = {a: arr[:, i] for i, a in enumerate(self.atoms)}


def mvs5_model_count(num_types: int) -> int:
    return 2 ** num_types - 1


def poss_model_count(num_types: int, n: int, normalized: bool = True) -> int:
    total = (n + 1) ** num_types
    return total - n ** num_types if normalized else total - 1


def mvs5_rows(num_types: int, chunk: int = 1 << 15):
    """Chunks of canonical MVS5 rows: 0 marks presence, -1 absence."""
    buf = []
    size = 0
    for k in range(1, num_types + 1):
        combos = np.asarray(list(itertools.combinations(range(num_types), k)), dtype=np.int64)
        block = np.full((len(combos), num_types), -1, dtype=np.int8)
        np.put_along_axis(block, combos, 0, axis=1)
        buf.append(block)
        size += len(block)
        if size >= chunk:
            yield np.concatenate(buf)
            buf, size = [], 0
    if buf:
        yield np.concatenate(buf)


def poss_rows(num_types: int, n: int, normalized: bool = True, chunk: int = 1 << 15):
    """Chunks of canonical possibilistic rows: -1 absent, else pi numerator."""
    top = n - 1
    powers = n ** np.arange(0, 64)[:num_types][::-1]
    buf = []
    size = 0
    for k in range(1, num_types + 1):
        digits_all = (np.arange(n ** k)[:, None] // (n ** np.arange(k - 1, -1, -1))) % n
        if normalized:
            digits_all = digits_all[digits_all.max(axis=1) == top]
        for combo in itertools.combinations(range(num_types), k):
            block = np.full((len(digits_all), num_types), -1, dtype=np.int8)
            block[:, list(combo)] = digits_all
            buf.append(block)
            size += len(block)
            if size >= chunk:
                yield np.concatenate(buf)
                buf, size = [], 0
    if buf:
        yield np.concatenate(buf)


def evaluate(
    core: Formula,
    space: TypeSpace,
    rows: np.ndarray,
    variant,  # SemanticsVariant value string to avoid an import cycle
    p_from_rows: str | None = None,
    cache: dict | None = None,
) -> np.ndarray:
    """Value of `core` at every (model, world-type), broadcastable to rows.shape.

    `p_from_rows` names an atom (not in the space) whose value at each world
    is the row entry itself; that is how p-guarded MVS5 checks reuse the
    compact possibilistic row format.
    """
    top = space.n - 1
    present = rows >= 0
    if cache is None:
        cache = {}

    def rec(f: Formula) -> np.ndarray:
        if f in cache:
            return cache[f]
        out = _node(f)
        cache[f] = out
        return out

    def spread(x):
        return np.broadcast_to(x, rows.shape)

    def dia_mvs5(x):
        return np.where(present, spread(x), -1).max(axis=1, keepdims=True)

    def box_mvs5(x):
        return np.where(present, spread(x), top + 1).min(axis=1, keepdims=True)

    def dia_kd45(x):
        return np.where(present, np.minimum(rows, spread(x)), -1).max(axis=1, keepdims=True)

    def _node(f: Formula) -> np.ndarray:
        match f:
            case Atom(name):
                if p_from_rows is not None and name == p_from_rows:
                    return rows.astype(np.int16)
                if name == TOP_ATOM and name not in space.columns:
                    return np.zeros(space.size, dtype=np.int16)
                if name not in space.columns:
                    raise VariantMismatch(f"atom {name!r} not in the enumeration space")
                return space.columns[name]
            case Neg(a):
                return top - rec(a)
            case Imp(a, b):
                return np.minimum(top, top - rec(a) + rec(b))
            case Min(a, b):
                return np.minimum(rec(a), rec(b))
            case Max(a, b):
                return np.maximum(rec(a), rec(b))
            case SConj(a, b):
                return np.maximum(0, rec(a) + rec(b) - top)
            case SDisj(a, b):
                return np.minimum(top, rec(a) + rec(b))
            case Iff(a, b):
                return top - np.abs(rec(a) - rec(b))
            case Coef(i, a):
                return np.where(rec(a) == i.num, top, 0).astype(np.int16)
            case Dia(a):
                if variant in ("mvs5", "pguard"):
                    return dia_mvs5(rec(a))
                if variant == "mvkd45":
                    return dia_kd45(rec(a))
                if variant == "altbox":
                    return np.where(present, np.maximum(0, rows + spread(rec(a)) - top), -1).max(
                        axis=1, keepdims=True)
                raise VariantMismatch("QFL2 has no unary modalities")
            case Box(a):
                if variant == "altbox":
                    return np.where(present, np.minimum(top, top - rows + spread(rec(a))), top + 1).min(
                        axis=1, keepdims=True)
                return top - rec(Dia(Neg(a)))
            case Comp(a, b):
                if variant != "qfl2":
                    raise VariantMismatch(f"{variant} does not interpret the comparison connective")
                return np.minimum(top, top - dia_kd45(rec(a)) + dia_kd45(rec(b)))
        raise TypeError(f"not a core formula node: {f!r}")

    return rec(core)


def first_failure(value_rows: np.ndarray, present: np.ndarray, top: int):
    """(model index, type index) of the first present world valued below 1."""
    fails = present & (np.broadcast_to(value_rows, present.shape) < top)
    models = fails.any(axis=1)
    if not models.any():
        return None
    m = int(models.argmax())
    t = int(fails[m].argmax())
    return m, t


def materialize(
    row: np.ndarray,
    space: TypeSpace,
    possibilistic: bool,
    reserved_value_atom: str | None = None,
) -> PossibilisticModel | MVS5Model:
    """Turn one canonical row back into a model object (world ids w0, w1, ...)."""
    worlds = []
    idx = 0
    for t, entry in enumerate(row.tolist()):
        if entry < 0:
            continue
        val = {a: tv(k, space.n) for a, k in zip(space.atoms, space.types[t])}
        if reserved_value_atom is not None:
            val[reserved_value_atom] = tv(entry, space.n)
        pi = tv(entry, space.n) if possibilistic else None
        worlds.append(World(f"w{idx}", val, pi))
        idx += 1
    atoms = space.atoms + ((reserved_value_atom,) if reserved_value_atom else ())
    cls = PossibilisticModel if possibilistic else MVS5Model
    return cls(space.n, atoms, worlds)
