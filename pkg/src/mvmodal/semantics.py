"""Evaluation of formulas in models, and the possibility/necessity measures.

The evaluator is the semantic reference implementation: a direct recursive
interpretation of each variant.  The decision procedures in `decide` use a
vectorized engine for exhaustive enumeration; countermodels found there are
always re-evaluated here, so the two routes check each other.
"""
from __future__ import annotations

import enum

from .errors import ResolutionMismatch, UnknownWorld, VariantMismatch
from .values import TruthValue, all_values, tv
from . import values as V
from .formula import (
    Atom, Box, Coef, Comp, Dia, Formula, Iff, Imp, Max, Min, Neg, SConj, SDisj,
    TOP_ATOM, desugar, subformulas,
)
from .kripke import MVS5Model, Model, PossibilisticModel, p_extension


class SemanticsVariant(enum.Enum):
    MVS5 = "mvs5"
    MVKD45 = "mvkd45"
    ALT_BOX = "altbox"
    QFL2 = "qfl2"


def _check_language(f: Formula, variant: SemanticsVariant) -> None:
    for g in subformulas(f):
        if isinstance(g, Comp) and variant is not SemanticsVariant.QFL2:
            raise VariantMismatch(f"{variant.value} does not interpret the comparison connective")
        if variant is SemanticsVariant.QFL2 and isinstance(g, (Box, Dia, Coef)):
            raise VariantMismatch("QFL2 formulas contain only atoms, connectives and <|")


class _Evaluator:
    """Per-call context; memoizes world-constant modal values."""

    def __init__(self, model: Model, variant: SemanticsVariant):
        self.model = model
        self.variant = variant
        self.n = model.n
        self.modal_cache: dict[Formula, int] = {}

    def atom(self, name: str, widx: int) -> int:
        world = self.model.worlds[widx]
        if name == TOP_ATOM and name not in world.val:
            return 0
        if name not in world.val:
            raise VariantMismatch(f"atom {name!r} is not valued in the model")
        return world.val[name].num

    def at(self, f: Formula, widx: int) -> int:
        top = self.n - 1
        match f:
            case Atom(name):
                return self.atom(name, widx)
            case Neg(a):
                return top - self.at(a, widx)
            case Imp(a, b):
                return min(top, top - self.at(a, widx) + self.at(b, widx))
            case Min(a, b):
                return min(self.at(a, widx), self.at(b, widx))
            case Max(a, b):
                return max(self.at(a, widx), self.at(b, widx))
            case SConj(a, b):
                return max(0, self.at(a, widx) + self.at(b, widx) - top)
            case SDisj(a, b):
                return min(top, self.at(a, widx) + self.at(b, widx))
            case Iff(a, b):
                return top - abs(self.at(a, widx) - self.at(b, widx))
            case Coef(i, a):
                if i.n != self.n:
                    raise ResolutionMismatch(
                        f"coefficient over {i.n} values in a model with {self.n}")
                return top if self.at(a, widx) == i.num else 0
            case Box(_) | Dia(_) | Comp(_, _):
                return self.modal(f)
        raise TypeError(f"not a core formula node: {f!r}")

    def modal(self, f: Formula) -> int:
        if f in self.modal_cache:
            return self.modal_cache[f]
        top = self.n - 1
        worlds = range(len(self.model.worlds))
        variant = self.variant
        match f:
            case Dia(a):
                if variant is SemanticsVariant.MVS5:
                    out = max(self.at(a, w) for w in worlds)
                elif variant is SemanticsVariant.MVKD45:
                    out = max(min(self._pi(w), self.at(a, w)) for w in worlds)
                elif variant is SemanticsVariant.ALT_BOX:
                    out = max(max(0, self._pi(w) + self.at(a, w) - top) for w in worlds)
                else:
                    raise VariantMismatch("QFL2 has no unary modalities")
            case Box(a):
                if variant is SemanticsVariant.ALT_BOX:
                    out = min(min(top, top - self._pi(w) + self.at(a, w)) for w in worlds)
                else:
                    # box is the dual of dia in both MVS5 and MVKD45
                    out = top - self.modal(Dia(Neg(a)))
            case Comp(a, b):
                pa = max(min(self._pi(w), self.at(a, w)) for w in worlds)
                pb = max(min(self._pi(w), self.at(b, w)) for w in worlds)
                out = min(top, top - pa + pb)
            case _:
                raise TypeError(f"not a modal node: {f!r}")
        self.modal_cache[f] = out
        return out

    def _pi(self, widx: int) -> int:
        pi = self.model.worlds[widx].pi
        if pi is None:
            raise VariantMismatch("this variant needs a possibilistic model (with pi)")
        return pi.num


def _prepare(f: Formula, model: Model, variant: SemanticsVariant, reserved: str | None):
    core = desugar(f, reserved or model.reserved_p)
    _check_language(core, variant)
    if variant is SemanticsVariant.MVS5 and isinstance(model, PossibilisticModel):
        model = p_extension(model, reserved or model.reserved_p)
    if variant is not SemanticsVariant.MVS5 and isinstance(model, MVS5Model):
        raise VariantMismatch(f"{variant.value} evaluation needs a possibilistic model")
    return core, model


def eval_formula(
    f: Formula,
    model: Model,
    world: str,
    variant: SemanticsVariant,
    reserved: str | None = None,
) -> TruthValue:
    """Value of f at the named world under the given semantics variant.

    MVS5 on a possibilistic model evaluates on its p-extension; sugar is
    expanded with the model's reserved atom unless overridden.
    """
    core, model = _prepare(f, model, variant, reserved)
    try:
        widx = model.world_ids().index(world)
    except ValueError:
        raise UnknownWorld(f"no world {world!r} in model") from None
    return tv(_Evaluator(model, variant).at(core, widx), model.n)


def global_value(
    f: Formula,
    model: Model,
    variant: SemanticsVariant,
    reserved: str | None = None,
) -> TruthValue:
    """World-independent value of a modal-rooted formula; asserts constancy."""
    core, model = _prepare(f, model, variant, reserved)
    if not isinstance(core, (Box, Dia, Comp)):
        raise ValueError("global_value needs a box/dia/<| rooted formula (after desugaring)")
    ev = _Evaluator(model, variant)
    vals = {ev.at(core, w) for w in range(len(model.worlds))}
    if len(vals) != 1:
        raise AssertionError(f"modal value not world-constant: {sorted(vals)}")
    return tv(vals.pop(), model.n)


def possibility(
    f: Formula,
    model: PossibilisticModel,
    variant: SemanticsVariant | None = None,
    reserved: str | None = None,
) -> TruthValue:
    """Pi(f) = max over worlds of pi(w) /\\ value of f at w.

    Modal-free formulas need no variant; formulas with modalities are
    evaluated under the given variant (their value is world-constant there).
    """
    if not isinstance(model, PossibilisticModel):
        raise VariantMismatch("possibility is defined on possibilistic models")
    core = desugar(f, reserved or model.reserved_p)
    has_modal = any(isinstance(g, (Box, Dia, Comp)) for g in subformulas(core))
    if has_modal and variant is None:
        raise VariantMismatch("a semantics variant is required for modal formulas")
    if not has_modal:
        ev = _Evaluator(model, SemanticsVariant.MVKD45)
        return tv(
            max(min(w.pi.num, ev.at(core, i)) for i, w in enumerate(model.worlds)),
            model.n,
        )
    vals = [
        min(model.worlds[i].pi.num,
            eval_formula(f, model, model.worlds[i].id, variant, reserved).num)
        for i in range(len(model.worlds))
    ]
    return tv(max(vals), model.n)


def necessity(
    f: Formula,
    model: PossibilisticModel,
    variant: SemanticsVariant | None = None,
    reserved: str | None = None,
) -> TruthValue:
    """N(f) = 1 - Pi(not f)."""
    return V.neg(possibility(Neg(f), model, variant, reserved))
