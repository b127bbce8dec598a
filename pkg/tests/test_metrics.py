import random
from fractions import Fraction

import pytest

from scottpersist import generators as G
from scottpersist import linalg as la
from scottpersist import poset as P
from scottpersist.cellmod import CellComplex, CellModule, CellMorphism, indicator, isomorphic, zero_module
from scottpersist.errors import ComplexMismatchError, NotComputableError, PreconditionError, TranslationError
from scottpersist.metrics import (
    INF,
    InterleavingCertificate,
    SuperlinearFamily,
    canonical_interleaving,
    check_interleaving,
    distance_indicator,
    distance_scott,
    distance_to_zero,
    enlarge_certificate,
    identity_certificate,
    interleaved_by_scalars,
    search_distance,
    standard_family,
    tr_flags,
)
from scottpersist.regions import ConvexRegion, boundary, down_set, interior, up_set

F2 = standard_family(2)
U00, U12 = up_set([(0, 0)]), up_set([(1, 2)])
D11 = down_set([(1, 1)])


def test_tr_flags_examples():
    f = tr_flags(F2)
    assert f.TR1 and f.TR2 and f.TR3
    f = tr_flags(SuperlinearFamily((1, 0)))
    assert f.TR1 and not f.TR2 and "TR2" in f.witnesses
    assert not tr_flags(SuperlinearFamily((0, 0))).TR2


def test_tr3_holds_for_zero_direction():
    # p << q leaves room p <= p + eps*0 <= q for any eps
    assert tr_flags(SuperlinearFamily((0, 0))).TR3


def test_cone_family():
    cone = P.RnCone(2, ((1, 0), (1, 1)))
    assert tr_flags(SuperlinearFamily((1, 0), cone)).TR2
    assert not tr_flags(SuperlinearFamily((0, 1), cone)).TR2
    with pytest.raises(TranslationError):
        SuperlinearFamily((-1, 0))


def test_check_interleaving_examples():
    m = indicator(U00)
    assert check_interleaving(m, m, identity_certificate(m, (1, 1)))
    n = indicator(U12)
    assert interleaved_by_scalars(m, n, (1, 1), 2) is not None
    assert interleaved_by_scalars(m, n, (1, 1), Fraction(1, 2)) is None


def test_wrong_certificate_rejected():
    m, n = indicator(U00), indicator(U12)
    cert = interleaved_by_scalars(m, n, (1, 1), 2)
    with pytest.raises(ComplexMismatchError):
        check_interleaving(m, n, InterleavingCertificate(cert.eps, cert.v, cert.f, cert.f))
    zero_g = CellMorphism(cert.g.source, cert.g.target, {}, validate=False)
    ok, why = check_interleaving(m, n, InterleavingCertificate(cert.eps, cert.v, cert.f, zero_g), explain=True)
    assert not ok and "triangle" in why


def test_canonical_interleaving_examples():
    m = indicator(U00)
    other, cert = canonical_interleaving(m, "overline", 1, F2)
    assert isomorphic(other, indicator(interior(U00)))
    assert check_interleaving(m, other, cert)
    d = indicator(D11)
    other, cert = canonical_interleaving(d, "underline", 1, F2)
    assert check_interleaving(d, other, cert)
    b = indicator(boundary(D11))
    other, cert = canonical_interleaving(b, "overline", 1, F2)
    assert other.is_zero() and check_interleaving(b, other, cert)
    with pytest.raises(TranslationError):
        canonical_interleaving(m, "overline", 1, SuperlinearFamily((1, 0)))


def test_distance_indicator_examples():
    assert distance_indicator(U00, U12, F2) == 2
    assert distance_indicator(U00, interior(U00), F2) == 0
    assert distance_indicator(U00, U00, F2) == 0
    assert distance_indicator(U00, U12, SuperlinearFamily((1, 0))) == INF
    with pytest.raises(PreconditionError):
        distance_indicator(U00, D11, F2)
    with pytest.raises(NotComputableError):
        distance_indicator(boundary(D11), D11, F2)


def test_distance_indicator_cone():
    cone = P.RnCone(2, ((1, 0), (0, 1)))
    a, b = up_set([(0, 0)], poset=cone), up_set([(1, 2)], poset=cone)
    assert distance_indicator(a, b, SuperlinearFamily((1, 1), cone)) == 2


def test_distance_to_zero_examples():
    assert distance_to_zero(indicator(boundary(D11)), F2) == 0
    assert distance_to_zero(indicator(U00), F2) == INF
    K = CellComplex([[0, 1], [0, 1]])
    inside = {c: int(all(s in (1, 2, 3) for s in c)) for c in K.cells()}
    steps = {(c, a): la.identity(1) for c in K.cells() for a in range(2)
             if inside[c] and K.successor(c, a) and inside[K.successor(c, a)]}
    box = CellModule(K, inside, steps)
    assert distance_to_zero(box, F2) == Fraction(1, 2)
    with pytest.raises(TranslationError):
        distance_to_zero(box, SuperlinearFamily((1, 0)))


def test_distance_to_zero_matches_eval_oracle():
    rng = random.Random(4)
    for _ in range(10):
        m = G.rand_module(rng, 2)
        d = distance_to_zero(m, F2)
        if d in (0, INF):
            continue
        # the map over a 2d-length step vanishes, slightly shorter ones do not everywhere
        for c in m.support():
            p = m.complex.representative(c)
            q = tuple(x + 2 * d + Fraction(1, 100) for x in p)
            assert m.eval_map(p, q).is_zero()


def test_distance_scott_examples():
    assert distance_scott(indicator(U00), indicator(interior(U00)), F2) == 0
    assert distance_scott(indicator(U00), indicator(U12), F2) == 2
    z = zero_module(CellComplex([[], []]))
    assert distance_scott(indicator(boundary(D11)), z, F2) == 0
    with pytest.raises(NotComputableError):
        distance_scott(indicator(U00), indicator(D11), F2)


def test_pseudometric_on_indicators():
    rng = random.Random(21)
    for _ in range(15):
        kind = rng.choice(("up", "down"))
        a, b, c = (G.rand_staircase(rng, 2, kind, max_gens=3) for _ in range(3))
        dab, dba = distance_indicator(a, b, F2), distance_indicator(b, a, F2)
        assert distance_indicator(a, a, F2) == 0 and dab == dba
        assert dab <= distance_indicator(a, c, F2) + distance_indicator(c, b, F2)


def test_certificates_are_monotone():
    m, n = indicator(U00), indicator(U12)
    cert = interleaved_by_scalars(m, n, (1, 1), 2)
    for eps in (Fraction(5, 2), 3, 7):
        assert check_interleaving(m, n, enlarge_certificate(m, n, cert, eps))


def test_search_matches_formula():
    rng = random.Random(17)
    for _ in range(6):
        kind = rng.choice(("up", "down"))
        a, b = (G.rand_staircase(rng, 2, kind, max_gens=2) for _ in range(2))
        assert search_distance(indicator(a), indicator(b), F2) == distance_indicator(a, b, F2)


def test_non_expansive_on_representatives():
    rng = random.Random(2)
    for _ in range(8):
        kind = rng.choice(("up", "down"))
        a, b = (G.rand_staircase(rng, 2, kind, max_gens=2) for _ in range(2))
        assert distance_scott(indicator(a), indicator(b), F2) <= distance_indicator(a, b, F2)
