"""Finite possibilistic Kripke models and MVS5 models.

Worlds carry a many-valued valuation; possibilistic models additionally
carry a normalized possibility distribution (max pi over worlds is 1).
Canonical enumeration works over valuation types: one world per distinct
valuation vector, in a fixed order (support size ascending, then
lexicographic), which makes countermodel search deterministic.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .errors import ResolutionMismatch, UnknownWorld
from .values import TruthValue, all_values, one, parse_value, tv
from .formula import DEFAULT_RESERVED


@dataclass
class World:
    id: str
    val: dict[str, TruthValue]
    pi: TruthValue | None = None


@dataclass
class PossibilisticModel:
    n: int
    atoms: tuple[str, ...]
    worlds: list[World]
    reserved_p: str = DEFAULT_RESERVED

    def world(self, world_id: str) -> World:
        for w in self.worlds:
            if w.id == world_id:
                return w
        raise UnknownWorld(f"no world {world_id!r} in model")

    def world_ids(self) -> list[str]:
        return [w.id for w in self.worlds]


@dataclass
class MVS5Model:
    n: int
    atoms: tuple[str, ...]
    worlds: list[World]
    reserved_p: str = DEFAULT_RESERVED

    world = PossibilisticModel.world
    world_ids = PossibilisticModel.world_ids


Model = PossibilisticModel | MVS5Model


def validate(model: Model) -> list[str]:
    """Every violated invariant, as human-readable strings; empty list means ok."""
    problems = []
    if not model.worlds:
        problems.append("model has no worlds")
    seen = set()
    for w in model.worlds:
        if w.id in seen:
            problems.append(f"duplicate world id {w.id!r}")
        seen.add(w.id)
        for a in model.atoms:
            if a not in w.val:
                problems.append(f"world {w.id!r} does not value atom {a!r}")
        for a, v in w.val.items():
            if a not in model.atoms:
                problems.append(f"world {w.id!r} values undeclared atom {a!r}")
            elif v.n != model.n:
                problems.append(f"world {w.id!r} values {a!r} at resolution {v.n}, model has {model.n}")
    if isinstance(model, PossibilisticModel):
        pis = [w.pi for w in model.worlds]
        if any(p is None for p in pis):
            problems.append("possibilistic model has worlds without pi")
        else:
            if any(p.n != model.n for p in pis):
                problems.append("pi resolution differs from the model resolution")
            elif model.worlds and max(p.num for p in pis) != model.n - 1:
                problems.append("pi is not normalized: no world has pi = 1")
    else:
        if any(w.pi is not None for w in model.worlds):
            problems.append("MVS5 model must not carry pi")
    return problems


def p_extension(model: PossibilisticModel, reserved: str | None = None) -> MVS5Model:
    """Fold pi into an ordinary atom: the reserved atom values the distribution."""
    reserved = reserved or model.reserved_p
    if reserved in model.atoms:
        raise ValueError(f"reserved atom {reserved!r} already occurs in the model")
    worlds = [World(w.id, {**w.val, reserved: w.pi}) for w in model.worlds]
    return MVS5Model(model.n, model.atoms + (reserved,), worlds, reserved)


def p_restriction(model: MVS5Model, reserved: str | None = None) -> PossibilisticModel:
    """Inverse of p_extension; requires the reserved atom to be normalized."""
    reserved = reserved or model.reserved_p
    if reserved not in model.atoms:
        raise ValueError(f"reserved atom {reserved!r} not among the model atoms")
    pis = [w.val[reserved] for w in model.worlds]
    if not pis or max(p.num for p in pis) != model.n - 1:
        raise ValueError(f"reserved atom {reserved!r} is not normalized (no world values it 1)")
    worlds = [
        World(w.id, {a: v for a, v in w.val.items() if a != reserved}, w.val[reserved])
        for w in model.worlds
    ]
    atoms = tuple(a for a in model.atoms if a != reserved)
    return PossibilisticModel(model.n, atoms, worlds, reserved)


# ---------------------------------------------------------------------------
# Valuation types and canonical enumeration.


def valuation_types(atoms, n: int) -> list[tuple[int, ...]]:
    """All numerator vectors over the sorted atom list, lexicographic."""
    names = tuple(sorted(atoms))
    return list(itertools.product(range(n), repeat=len(names)))


def _type_world(names, n, idx, nums, pi_num=None) -> World:
    val = {a: tv(k, n) for a, k in zip(names, nums)}
    pi = None if pi_num is None else tv(pi_num, n)
    return World(f"w{idx}", val, pi)


def iter_mvs5_supports(num_types: int):
    """Nonempty subsets of type indices, support size ascending then lex."""
    for k in range(1, num_types + 1):
        yield from itertools.combinations(range(num_types), k)


def iter_poss_assignments(num_types: int, n: int, normalized: bool = True):
    """(support, pi-vector) pairs in canonical order.

    pi runs over all value assignments to the support; when `normalized`,
    only assignments whose maximum is 1 are produced.
    """
    top = n - 1
    for support in iter_mvs5_supports(num_types):
        for pis in itertools.product(range(n), repeat=len(support)):
            if normalized and max(pis) != top:
                continue
            yield support, pis


def enum_mvs5_canonical(atoms, resolution: int):
    """One MVS5 model per nonempty subset of valuation types."""
    names = tuple(sorted(atoms))
    types = valuation_types(names, resolution)
    for support in iter_mvs5_supports(len(types)):
        worlds = [_type_world(names, resolution, i, types[t]) for i, t in enumerate(support)]
        yield MVS5Model(resolution, names, worlds)


def enum_possibilistic_canonical(atoms, resolution: int):
    """One model per map from valuation types to {absent} ∪ Values with max 1.

    Absent types are not worlds at all; pi = 0 keeps the type as an
    evaluation point that contributes nothing to possibility.
    """
    names = tuple(sorted(atoms))
    types = valuation_types(names, resolution)
    for support, pis in iter_poss_assignments(len(types), resolution):
        worlds = [
            _type_world(names, resolution, i, types[t], pi_num)
            for i, (t, pi_num) in enumerate(zip(support, pis))
        ]
        yield PossibilisticModel(resolution, names, worlds)


def canonicalize(model: Model) -> Model:
    """Merge worlds with identical valuations; keep max pi and the smallest id."""
    groups: dict[tuple, list[World]] = {}
    for w in model.worlds:
        key = tuple(w.val[a].num for a in model.atoms)
        groups.setdefault(key, []).append(w)
    merged = []
    for key, ws in groups.items():
        wid = min(w.id for w in ws)
        if isinstance(model, PossibilisticModel):
            pi = tv(max(w.pi.num for w in ws), model.n)
        else:
            pi = None
        merged.append(World(wid, dict(ws[0].val), pi))
    return type(model)(model.n, model.atoms, merged, model.reserved_p)


def random_possibilistic_model(rng, n: int, atoms, max_worlds: int = 6) -> PossibilisticModel:
    """Random normalized model; one world is forced to pi = 1."""
    names = tuple(sorted(atoms))
    count = rng.randint(1, max_worlds)
    worlds = []
    for i in range(count):
        val = {a: tv(rng.randrange(n), n) for a in names}
        worlds.append(World(f"w{i}", val, tv(rng.randrange(n), n)))
    worlds[rng.randrange(count)].pi = one(n)
    return PossibilisticModel(n, names, worlds)


# ---------------------------------------------------------------------------
# JSON model files.


def model_to_dict(model: Model) -> dict:
    worlds = []
    for w in model.worlds:
        entry = {"id": w.id, "val": {a: str(w.val[a]) for a in model.atoms}}
        if w.pi is not None:
            entry["pi"] = str(w.pi)
        worlds.append(entry)
    return {
        "n": model.n,
        "atoms": list(model.atoms),
        "reserved_p": model.reserved_p,
        "worlds": worlds,
    }


def model_from_dict(data: dict) -> Model:
    n = data["n"]
    atoms = tuple(data["atoms"])
    reserved = data.get("reserved_p", DEFAULT_RESERVED)
    worlds = []
    with_pi = without_pi = 0
    for entry in data["worlds"]:
        val = {a: parse_value(s, n) for a, s in entry["val"].items()}
        pi = None
        if "pi" in entry:
            pi = parse_value(entry["pi"], n)
            with_pi += 1
        else:
            without_pi += 1
        worlds.append(World(entry["id"], val, pi))
    if with_pi and without_pi:
        raise ValueError("model mixes worlds with and without pi")
    cls = PossibilisticModel if with_pi else MVS5Model
    model = cls(n, atoms, worlds, reserved)
    problems = validate(model)
    if problems:
        raise ValueError("invalid model: " + "; ".join(problems))
    return model


def load_model(path) -> Model:
    with open(path, encoding="utf-8") as fh:
        return model_from_dict(json.load(fh))


def save_model(model: Model, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(model), fh, indent=2)
        fh.write("\n")
