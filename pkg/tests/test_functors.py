import random

import pytest

from scottpersist import generators as G
from scottpersist.cellmod import indicator, isomorphic, zero_module
from scottpersist.functors import (
    PosetModule,
    indicator_closed_form,
    is_ephemeral,
    is_lower_semicontinuous,
    is_upper_semicontinuous,
    jstar_representative,
    l1_top,
    overline,
    r1_socle,
    scott_radical,
    scott_socle,
    scott_top,
    underline,
)
from scottpersist.regions import boundary, down_set, up_set

U = up_set([(0, 0)])
OU = up_set([(0, 0)], "open")
D = down_set([(1, 1)])
OD = down_set([(1, 1)], "open")


def k(r):
    return indicator(r)


def test_overline_examples():
    assert isomorphic(overline(k(U)).output, k(OU))
    assert isomorphic(overline(k(OD)).output, k(D))


def test_underline_examples():
    assert isomorphic(underline(k(OU)).output, k(U))
    assert isomorphic(underline(k(D)).output, k(OD))


def test_socle_radical_top_examples():
    assert isomorphic(scott_socle(k(D)).output, k(boundary(D)))
    assert scott_top(k(D)).is_zero
    assert isomorphic(scott_radical(k(U)).output, k(OU))


def test_derived_examples():
    assert isomorphic(r1_socle(k(OU)), k(boundary(U)))
    assert r1_socle(k(D)).is_zero()
    assert isomorphic(l1_top(k(OD)), k(boundary(D)))
    assert l1_top(k(U)).is_zero()


def test_derived_vanish_on_semicontinuous():
    assert r1_socle(k(U)).is_zero()  # closed up-set: upper
    assert l1_top(k(D)).is_zero()  # closed down-set: lower


def test_ephemeral_examples():
    assert is_ephemeral(k(boundary(D)))
    assert not is_ephemeral(k(U))
    assert is_ephemeral(zero_module(k(U).complex))


def test_semicontinuity_examples():
    assert is_lower_semicontinuous(k(D))
    assert not is_upper_semicontinuous(k(D))
    assert is_upper_semicontinuous(k(OD))
    assert is_upper_semicontinuous(k(U))


def test_jstar_examples():
    assert isomorphic(jstar_representative(k(U)), jstar_representative(k(OU)))
    assert isomorphic(jstar_representative(k(OD)), jstar_representative(k(D)))
    assert jstar_representative(k(boundary(D))).is_zero()


def test_canonical_morphisms_are_natural():
    rng = random.Random(3)
    for _ in range(10):
        m = G.rand_module(rng)
        assert overline(m).morphism.is_natural()
        assert underline(m).morphism.is_natural()


@pytest.mark.parametrize("name", ["overline", "underline", "soc", "rad", "top", "r1soc", "l1top"])
def test_closed_forms_on_staircases(name):
    from scottpersist.functors import apply_functor

    rng = random.Random(name)
    for _ in range(8):
        r = G.rand_region(rng)
        form = indicator_closed_form(r, name)
        out = apply_functor(name, k(r))
        assert out.is_zero() if form is None else isomorphic(out, k(form))


def test_nonzero_finitely_generated_is_not_lower():
    rng = random.Random(12)
    for _ in range(10):
        assert not is_lower_semicontinuous(G.rand_finitely_generated(rng))


def test_lower_semicontinuity_closed_under_sums():
    from scottpersist.cellmod import direct_sum

    rng = random.Random(6)
    for _ in range(5):
        a, b = G.rand_grid_module(rng, 2), G.rand_grid_module(rng, 2)
        assert is_lower_semicontinuous(direct_sum(a, b))


def test_finite_poset_fast_path():
    rng = random.Random(1)
    pm = G.rand_poset_module(rng)
    assert isinstance(pm, PosetModule)
    assert overline(pm).output is pm and underline(pm).output is pm
    assert is_upper_semicontinuous(pm) and is_lower_semicontinuous(pm)
    assert scott_socle(pm).is_zero and scott_top(pm).is_zero
