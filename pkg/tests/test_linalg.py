import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scottpersist import linalg as la
from scottpersist.linalg import _fpkernel_py
from scottpersist.linalg._backend import rref_mod


def rand_matrix(rng, r, c, lo=-3, hi=3):
    return la.Matrix.from_rows([[rng.randint(lo, hi) for _ in range(c)] for _ in range(r)], c)


def test_kernel_and_image():
    a = la.Matrix.from_rows([[1, 2, 3], [2, 4, 6]])
    k = la.kernel_basis(a)
    assert k.cols == 2 and (a @ k).is_zero()
    assert la.image_basis(a).cols == 1
    assert la.rank(a) == 1


def test_solve_and_inverse():
    a = la.Matrix.from_rows([[2, 1], [1, 1]])
    assert la.inverse(a) @ a == la.identity(2)
    b = la.Matrix.from_rows([[3], [2]])
    assert a @ la.solve(a, b) == b
    with pytest.raises(ValueError):
        la.solve(la.Matrix.from_rows([[1], [1]]), la.Matrix.from_rows([[1], [2]]))


def test_quotient_map():
    basis = la.Matrix.from_rows([[1], [1], [0]])
    q = la.quotient_map(3, basis)
    assert q.shape == (2, 3) and (q @ basis).is_zero() and la.rank(q) == 2
    assert la.quotient_map(2, la.zeros(2, 0)) == la.identity(2)


def test_subspace_intersection():
    a = la.Matrix.from_rows([[1, 0], [0, 1], [0, 0]])
    b = la.Matrix.from_rows([[1, 0], [0, 0], [0, 1]])
    meet = la.subspace_intersection([a, b], 3)
    assert meet.cols == 1 and la.same_column_space(meet, la.Matrix.from_rows([[1], [0], [0]]))


def test_empty_shapes():
    assert la.kernel_basis(la.zeros(0, 3)) == la.identity(3)
    assert la.rank(la.zeros(3, 0)) == 0
    assert (la.zeros(2, 0) @ la.zeros(0, 4)).shape == (2, 4)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 6), st.integers(1, 6))
def test_rank_nullity(seed, r, c):
    a = rand_matrix(random.Random(seed), r, c)
    assert la.rank(a) + la.kernel_basis(a).cols == c
    assert la.rank(a) == la.rank(a.T)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 6), st.integers(1, 6))
def test_prime_field_rank_agrees_with_rationals(seed, r, c):
    rows = [[random.Random(seed * 7 + i).randint(-3, 3) for _ in range(c)] for i in range(r)]
    q_rank = la.rank(la.Matrix.from_rows(rows, c))
    with la.use_field("fp:32003"):
        p_rank = la.rank(la.Matrix.from_rows(rows, c))
    # small integer matrices have no minors divisible by 32003
    assert p_rank == q_rank


def test_prime_field_can_drop_rank():
    rows = [[1, 1], [1, 3]]
    assert la.rank(la.Matrix.from_rows(rows)) == 2
    with la.use_field("fp:2"):
        assert la.rank(la.Matrix.from_rows(rows)) == 1


def test_sparse_matches_dense():
    rng = random.Random(3)
    for _ in range(30):
        a = rand_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
        rows = [{j: x for j, x in enumerate(row) if x} for row in a.entries]
        assert la.sparse_rank(rows) == la.rank(a)
        ns = la.sparse_nullspace(rows, a.cols)
        assert len(ns) == a.cols - la.rank(a)
        for vec in ns:
            assert all(sum(x * y for x, y in zip(row, vec)) == 0 for row in a.entries)


def test_compiled_kernel_matches_fallback():
    rng = random.Random(11)
    p = 32003
    for _ in range(50):
        r, c = rng.randint(1, 8), rng.randint(1, 8)
        rows = [[rng.randint(-50, 50) for _ in range(c)] for _ in range(r)]
        assert rref_mod(rows, c, p) == _fpkernel_py.rref_mod(rows, c, p)


def test_compiled_kernel_is_built():
    # informational: the fallback is always available, the extension when built
    assert la.COMPILED in (True, False)


def test_field_parsing():
    assert la.parse_field("rational") == la.RationalField()
    assert la.parse_field("fp") == la.PrimeField(la.DEFAULT_PRIME)
    with pytest.raises(ValueError):
        la.PrimeField(4)
    with pytest.raises(ValueError):
        la.parse_field("reals")


def test_fraction_entries():
    a = la.Matrix.from_rows([["1/2", 0], [0, Fraction(1, 3)]])
    assert la.inverse(a) == la.Matrix.from_rows([[2, 0], [0, 3]])
