import random

import pytest

from mvmodal.errors import CapExceeded, VariantMismatch
from mvmodal.formula import Neg, modal_ops, parse, random_formula
from mvmodal.decide import (
    axiom_suite, entails, equiv_check, is_ln_tautology, is_one_tautology,
    model_space_size,
)
from mvmodal.semantics import SemanticsVariant, eval_formula
from mvmodal.values import one, tv

MVS5 = SemanticsVariant.MVS5
MVKD45 = SemanticsVariant.MVKD45
ALT = SemanticsVariant.ALT_BOX
QFL2 = SemanticsVariant.QFL2


def test_trivial_tautology_all_variants():
    f = parse("q -> q", 3)
    for v in (MVS5, MVKD45, ALT):
        assert is_one_tautology(f, v, ("q",), 3).is_tautology


def test_model_counts():
    assert model_space_size(MVS5, 1, 3) == 7
    assert model_space_size(MVKD45, 1, 3) == 37
    assert model_space_size(MVS5, 2, 2) == 15


def test_seriality_over_37_models():
    v = is_one_tautology(parse("box q -> dia q", 3), MVKD45, ("q",), 3)
    assert v.is_tautology
    assert v.models_checked == 37


def test_countermodel_is_reported_and_reverifies():
    v = is_one_tautology(parse("q", 3), MVS5, ("q",), 3)
    assert not v.is_tautology
    assert v.countermodel is not None
    value = eval_formula(parse("q", 3), v.countermodel, v.world_id, MVS5)
    assert value == v.value
    assert value < one(3)


def test_first_countermodel_is_deterministic():
    v1 = is_one_tautology(parse("dia q", 3), MVKD45, ("q",), 3)
    v2 = is_one_tautology(parse("dia q", 3), MVKD45, ("q",), 3)
    from mvmodal.kripke import model_to_dict

    assert model_to_dict(v1.countermodel) == model_to_dict(v2.countermodel)
    assert v1.models_checked == v2.models_checked


def test_altbox_k_failure():
    f = parse("box(q -> r) -> (box q -> box r)", 3)
    v = is_one_tautology(f, ALT, ("q", "r"), 3)
    assert not v.is_tautology
    assert v.value == tv(1, 3)


def test_k_holds_in_standard_variants():
    f = parse("box(q -> r) -> (box q -> box r)", 3)
    assert is_one_tautology(f, MVS5, ("q", "r"), 3).is_tautology
    assert is_one_tautology(f, MVKD45, ("q", "r"), 3).is_tautology


def test_entails_modus_ponens():
    v = entails([parse("q", 3), parse("q -> r", 3)], parse("r", 3), MVKD45, None, 3)
    assert v.is_tautology
    v2 = entails([parse("q", 3)], parse("r", 3), MVS5, None, 3)
    assert not v2.is_tautology


def test_entails_empty_premises_is_tautology_check():
    f = parse("q \\/ !q", 3)
    assert entails([], f, MVS5, ("q",), 3).is_tautology == \
        is_one_tautology(f, MVS5, ("q",), 3).is_tautology


def test_equiv_check():
    assert equiv_check(parse("q", 3), parse("!!q", 3), MVS5, None, 3).is_tautology
    assert equiv_check(parse("dia_p q", 3), parse("dia(p@ /\\ q)", 3),
                       MVS5, ("q",), 3).is_tautology
    assert not equiv_check(parse("q", 3), parse("!q", 3), MVS5, None, 3).is_tautology


def test_comparison_vs_boxp_reading_is_not_an_equivalence():
    """The p-relative comparison does not match box_p A -> box_p B."""
    from mvmodal.formula import Atom, CompP
    from mvmodal.kripke import PossibilisticModel, World, p_extension

    # pi=1: q=1, r=1; pi=1/2: q=1, r=0. Both possibilities are 1 so the
    # comparison is 1, but N(q)=1 > N(r)=1/2 drops the other reading to 1/2.
    m = p_extension(PossibilisticModel(3, ("q", "r"), [
        World("w1", {"q": tv(2, 3), "r": tv(2, 3)}, tv(2, 3)),
        World("w2", {"q": tv(2, 3), "r": tv(0, 3)}, tv(1, 3)),
    ]))
    lhs = eval_formula(CompP(Atom("q"), Atom("r")), m, "w1", MVS5)
    rhs = eval_formula(parse("box_p q -> box_p r", 3), m, "w1", MVS5)
    assert lhs == one(3)
    assert rhs == tv(1, 3)


def test_ln_tautology():
    assert is_ln_tautology(parse("q -> q", 3)).is_tautology
    assert is_ln_tautology(parse("(q -> r) -> ((r -> s) -> (q -> s))", 3)).is_tautology
    v = is_ln_tautology(parse("q \\/ !q", 3))  # fails at q = 1/2
    assert not v.is_tautology
    assert v.value == tv(1, 3)
    with pytest.raises(VariantMismatch):
        is_ln_tautology(parse("box q", 3))


def test_ln_sum_schema_is_sound():
    # q |+| q |+| q -> q |+| q at n = 3
    f = parse("q |+| q |+| q -> q |+| q", 3)
    assert is_ln_tautology(f).is_tautology


def test_cap_enforced():
    with pytest.raises(CapExceeded):
        is_one_tautology(parse("q -> q", 3), MVKD45, ("q", "r", "s"), 3, cap=1000)


def test_unused_atoms_do_not_change_verdicts():
    rng = random.Random(43)
    unary, binary = modal_ops(3, with_coef=False)
    for _ in range(20):
        f = random_formula(rng, ("q",), rng.randint(1, 5), unary, binary)
        a = is_one_tautology(f, MVKD45, ("q",), 3).is_tautology
        b = is_one_tautology(f, MVKD45, ("q", "r"), 3).is_tautology
        assert a == b


def test_bulk_agrees_with_recursive_evaluator():
    """Cross-check the vectorized engine against plain recursion."""
    import numpy as np

    from mvmodal import bulk
    from mvmodal.kripke import enum_possibilistic_canonical

    rng = random.Random(47)
    unary, binary = modal_ops(3)
    space = bulk.TypeSpace(("q",), 3)
    rows = np.concatenate(list(bulk.poss_rows(space.size, 3)))
    models = list(enum_possibilistic_canonical(("q",), 3))
    assert len(models) == len(rows)
    picks = [rng.randrange(len(models)) for _ in range(8)]
    for _ in range(40):
        from mvmodal.formula import desugar

        f = desugar(random_formula(rng, ("q",), rng.randint(1, 6), unary, binary))
        vals = np.broadcast_to(
            bulk.evaluate(f, space, rows, "mvkd45"), rows.shape)
        for mi in picks:
            m = models[mi]
            for wpos, w in enumerate(m.worlds):
                t = space.types.index(tuple(v.num for v in
                                            [w.val[a] for a in space.atoms]))
                assert vals[mi, t] == eval_formula(f, m, w.id, MVKD45).num


def test_axiom_suite_smoke():
    rep = axiom_suite("ln", 3, per_schema=2)
    assert rep.ok
    rep2 = axiom_suite("qfl2", 3, per_schema=2)
    assert rep2.ok
    assert rep2.items
