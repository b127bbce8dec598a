from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scottpersist import poset as P
from scottpersist.errors import DimensionError, PreconditionError, UnsupportedPosetError

R2 = P.RnStandard(2)
ORTH = P.RnNonNeg(2)
CHAIN = P.FinitePoset(3, ((0, 1), (1, 2)))


def test_le_examples():
    assert P.le(R2, (0, 0), (1, 1))
    assert not P.le(P.RnCone(2, ((1, 0), (0, 1))), (0, 0), (1, -1))
    assert P.le(CHAIN, (0,), (2,))


def test_way_below_examples():
    assert not P.way_below(R2, (0, 0), (0, 1))
    assert P.way_below(ORTH, (1, 0), (2, 0))
    assert P.way_below(CHAIN, (0,), (0,))


def test_orthant_zero_coordinate_rule():
    assert P.way_below(ORTH, (0, 1), (0, 2))
    assert not P.way_below(ORTH, (1, 1), (1, 2))


def test_interpolate_examples():
    assert P.interpolate(R2, (0, 0), (2, 2)) == (1, 1)
    assert P.interpolate(P.RnCone(2, ((1, 0), (0, 1))), (0, 0), (4, 2)) == (2, 1)
    assert P.interpolate(CHAIN, (0,), (1,)) == (0,)
    with pytest.raises(PreconditionError):
        P.interpolate(R2, (0, 0), (0, 1))


def test_join_meet():
    assert P.join(R2, (1, 0), (0, 2)) == (1, 2)
    assert P.meet(R2, (1, 0), (0, 2)) == (0, 0)
    assert P.join(R2, (1, 1), (1, 1)) == (1, 1)
    with pytest.raises(UnsupportedPosetError):
        P.join(CHAIN, (0,), (1,))


def test_compactness():
    assert not P.is_compact(P.RnStandard(1), (0,))
    assert all(P.is_compact(CHAIN, (i,)) for i in range(3))
    assert P.is_compact(ORTH, (0, 0))


def test_validate_cone():
    assert P.validate_cone([[1, 0], [0, 1]]).valid
    rep = P.validate_cone([[1, 0]], 2)
    assert not rep.valid and not rep.full_rank
    rep = P.validate_cone([[1, 0], [-1, 0], [0, 1]])
    assert rep.full_rank and not rep.interior_nonempty and not rep.valid


def test_errors():
    with pytest.raises(DimensionError):
        P.le(R2, (0,), (1, 1))
    with pytest.raises(DimensionError):
        P.le(ORTH, (-1, 0), (1, 1))
    with pytest.raises(PreconditionError):
        P.FinitePoset(2, ((0, 1), (1, 0)))


def test_json_roundtrip():
    for po in (R2, ORTH, P.RnCone(2, ((1, 0), (1, 1))), CHAIN, P.Product((R2, CHAIN))):
        assert P.poset_from_json(P.poset_to_json(po)) == po


rats = st.fractions(min_value=-5, max_value=5, max_denominator=4)
points = st.tuples(rats, rats)


@settings(max_examples=200, deadline=None)
@given(points, points, points)
def test_basic_way_below_properties(x, y, z):
    for po in (R2, P.RnCone(2, ((1, 0), (1, 1)))):
        if P.way_below(po, x, y):
            assert P.le(po, x, y)
            m = P.interpolate(po, x, y)
            assert P.way_below(po, x, m) and P.way_below(po, m, y)
        if P.le(po, x, y) and P.way_below(po, y, z):
            assert P.way_below(po, x, z)
        if P.way_below(po, x, y) and P.le(po, y, z):
            assert P.way_below(po, x, z)


@settings(max_examples=200, deadline=None)
@given(points, points)
def test_identity_cone_matches_standard(x, y):
    cone = P.RnCone(2, ((1, 0), (0, 1)))
    assert P.way_below(cone, x, y) == P.way_below(R2, x, y)
    assert P.le(cone, x, y) == P.le(R2, x, y)


def test_product_is_componentwise():
    po = P.Product((P.RnStandard(1), CHAIN))
    assert P.way_below(po, (Fraction(0), 0), (Fraction(1), 1))
    assert not P.way_below(po, (Fraction(0), 0), (Fraction(0), 1))
