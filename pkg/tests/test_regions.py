import pytest

from scottpersist import poset as P
from scottpersist.errors import PreconditionError
from scottpersist.regions import (
    ConvexRegion,
    boundary,
    closure,
    contains,
    down_set,
    interior,
    is_injective_indicator_region,
    is_meager,
    region_equal,
    region_from_json,
    region_to_json,
    subset,
    up_set,
)


def test_generators_reduced_to_antichain():
    u = up_set([(0, 0), (1, 1), (2, 0)])
    assert u.gens == ((0, 0),)


def test_contains_flavors():
    assert contains(up_set([(0, 0)]), (0, 0))
    assert not contains(up_set([(0, 0)], "open"), (0, 0))
    assert not contains(up_set([(0, 0)], "open"), (0, 1))
    assert contains(up_set([(0, 0)], "open"), ("1/4", "1/4"))


def test_boundary_membership():
    b = boundary(down_set([(1, 1)]))
    assert contains(b, (1, 0)) and not contains(b, (0, 0))


def test_subset_strictness():
    assert subset(up_set([(0, 0)], "open"), up_set([(0, 0)]))
    assert not subset(up_set([(0, 0)]), up_set([(0, 0)], "open"))
    assert subset(up_set([(1, 1)]), up_set([(0, 0)], "open"))
    assert region_equal(interior(up_set([(0, 0)])), up_set([(0, 0)], "open"))
    assert region_equal(closure(down_set([(1, 1)], "open")), down_set([(1, 1)]))


def test_convex_region_requires_nesting():
    with pytest.raises(PreconditionError):
        ConvexRegion(up_set([(1, 1)]), up_set([(0, 0)]))


def test_meager():
    stair = boundary(up_set([(0, 2), (1, 1), (2, 0)]))
    res = is_meager(stair)
    assert res.meager is True and res.certificate
    res = is_meager(ConvexRegion(up_set([(0, 0)]), up_set([(5, 5)], "open")))
    assert res.meager is False
    x, y = res.witness
    assert P.way_below(P.RnStandard(2), x, y)


def test_injective_regions():
    assert is_injective_indicator_region(down_set([(1, 1)], "open"))
    assert not is_injective_indicator_region(down_set([(1, 0), (0, 1)], "open"))
    assert not is_injective_indicator_region(down_set([(1, 1)]))


def test_json_roundtrip():
    for r in (up_set([(0, "1/2")], "open"), boundary(down_set([(1, 1), (2, 0)]))):
        assert region_to_json(region_from_json(region_to_json(r))) == region_to_json(r)


def test_cone_regions():
    cone = P.RnCone(2, ((1, 0), (1, 1)))
    u = up_set([(0, 0)], poset=cone)
    assert contains(u, (1, -1)) and not contains(u, (-1, 2))
    assert subset(up_set([(1, 0)], poset=cone), u)
