import pytest

from mvmodal.errors import ResolutionMismatch
from mvmodal import values as V
from mvmodal.values import TruthValue, all_values, one, parse_value, tv, zero


def test_basic_construction():
    x = tv(1, 3)
    assert x.num == 1 and x.n == 3
    assert str(x) == "1/2"
    assert str(one(4)) == "3/3"
    assert str(zero(2)) == "0/1"


def test_bounds_checked():
    with pytest.raises(ValueError):
        tv(3, 3)
    with pytest.raises(ValueError):
        tv(-1, 3)
    with pytest.raises(ValueError):
        tv(0, 1)


def test_all_values_order():
    vals = all_values(4)
    assert [v.num for v in vals] == [0, 1, 2, 3]
    assert vals[0] == zero(4) and vals[-1] == one(4)


def test_parse_value_roundtrip():
    for n in range(2, 7):
        for v in all_values(n):
            assert parse_value(str(v), n) == v


def test_parse_value_rejects_wrong_denominator():
    with pytest.raises(ValueError):
        parse_value("1/3", 3)
    with pytest.raises(ValueError):
        parse_value("x/2", 3)


def test_negation_involution():
    for n in range(2, 7):
        for x in all_values(n):
            assert V.neg(V.neg(x)) == x


def test_implication_table_n3():
    # the n=3 implication table, row = antecedent
    table = [[V.imp(tv(a, 3), tv(b, 3)).num for b in range(3)] for a in range(3)]
    assert table == [[2, 2, 2], [1, 2, 2], [0, 1, 2]]


def test_residuation():
    """sconj(a,b) <= c iff a <= imp(b,c)."""
    for n in (2, 3, 4, 5, 6):
        for a in all_values(n):
            for b in all_values(n):
                for c in all_values(n):
                    assert (V.sconj(a, b) <= c) == (a <= V.imp(b, c))


def test_de_morgan():
    for n in (2, 3, 4, 5, 6):
        for a in all_values(n):
            for b in all_values(n):
                assert V.neg(V.tmin(a, b)) == V.tmax(V.neg(a), V.neg(b))
                assert V.neg(V.sconj(a, b)) == V.sdisj(V.neg(a), V.neg(b))


def test_equivalence_symmetric_and_diagonal():
    for n in (2, 3, 5):
        for a in all_values(n):
            assert V.equivalence(a, a) == one(n)
            for b in all_values(n):
                assert V.equivalence(a, b) == V.equivalence(b, a)


def test_mixed_resolution_rejected():
    with pytest.raises(ResolutionMismatch):
        V.imp(tv(1, 3), tv(1, 4))


def test_ordering():
    assert tv(0, 3) < tv(1, 3) < tv(2, 3)
    assert max(all_values(5)) == one(5)
