"""Exit criteria: twelve exact property checks with wall-clock limits.

Each test prints one PASS/FAIL line (collected into the terminal summary as
well). Run directly with ``python tests/test_acceptance.py`` for the lines alone.
"""
import random
import time
from fractions import Fraction

import pytest

from scottpersist import generators as G
from scottpersist import verify as V
from scottpersist.cellmod import direct_sum, indicator
from scottpersist.functors import is_ephemeral
from scottpersist.metrics import distance_to_zero, standard_family, tr_flags

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # running as a script
    ACCEPTANCE_LINES = []

pytestmark = pytest.mark.acceptance
SEED = 20240601


def _record(num, title, ok, elapsed, limit, detail=""):
    status = "PASS" if ok and elapsed < limit else "FAIL"
    line = f"[{num:2d}] {status} {title}: {elapsed:.2f}s (limit {limit}s){' ' + detail if detail else ''}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return status == "PASS"


def _report_detail(report):
    bad = next((r for r in report["results"] if not r["ok"]), None)
    return "" if bad is None else f"first failure: case {bad['case']} {bad['property']} {bad.get('witness')}"


def _suite_criterion(num, title, suite, cases, limit):
    t = time.perf_counter()
    report = V.run_suite(suite, seed=SEED, cases=cases)
    elapsed = time.perf_counter() - t
    ok = _record(num, title, report["passed"], elapsed, limit, _report_detail(report))
    assert report["passed"], _report_detail(report)
    assert elapsed < limit, f"took {elapsed:.2f}s"
    return ok


def test_01_way_below_oracles():
    # triples are drawn before the clock starts; the limit covers oracle evaluation
    corpus = V.way_below_triples(SEED, 1000)
    t = time.perf_counter()
    bad = {name: V.way_below_failures(po, triples) for name, (po, triples) in corpus.items()}
    elapsed = time.perf_counter() - t
    failed = {k: v[0] for k, v in bad.items() if v}
    _record(1, "way-below properties on 1000 triples per poset variant", not failed, elapsed, 1,
            str(failed) if failed else "")
    assert not failed
    assert elapsed < 1


def test_02_indicator_closed_forms():
    names = ("overline", "underline", "soc", "rad", "top", "r1soc", "l1top")
    t = time.perf_counter()
    failures = []
    rng = random.Random(SEED)
    from scottpersist.functors import apply_functor, indicator_closed_form

    for kind in ("up", "down"):
        for i in range(50):
            r = G.rand_staircase(rng, rng.choice((1, 2)), kind)
            m = indicator(r)
            for name in names:
                if not V._is_zero_or_iso(apply_functor(name, m), indicator_closed_form(r, name)):
                    failures.append((kind, i, name, repr(r)))
    elapsed = time.perf_counter() - t
    _record(2, "indicator closed forms on 50 up-sets and 50 down-sets", not failures, elapsed, 10,
            str(failures[:1]) if failures else "")
    assert not failures
    assert elapsed < 10


def test_03_line_composition():
    _suite_criterion(3, "line composition identities on 50 modules", "line-composition", 50, 10)


def test_04_exact_sequences():
    _suite_criterion(4, "alternating dimension sums on 50 modules", "exactness", 50, 10)


def test_05_soc_top_connection():
    _suite_criterion(5, "socle/top exchange on 50 modules", "soc-top-connection", 50, 10)


def test_06_ephemeral_equivalences():
    t = time.perf_counter()
    rng = random.Random(SEED)
    failures, n_eph = [], 0
    corpus = [(G.rand_module(rng), None) for _ in range(50)]
    corpus += [G.rand_boundary_module(rng) for _ in range(20)]
    for i, (m, region) in enumerate(corpus):
        n_eph += is_ephemeral(m)
        for prop, ok, wit in V.ephemeral_checks(m, region):
            if not ok:
                failures.append((i, prop, wit))
    # every constructed boundary indicator must come out ephemeral
    boundary_ok = all(is_ephemeral(m) for m, _ in corpus[50:])
    elapsed = time.perf_counter() - t
    ok = not failures and boundary_ok
    _record(6, f"ephemerality equivalences on 70 modules ({n_eph} ephemeral)", ok, elapsed, 10,
            str(failures[:1]) if failures else "")
    assert ok
    assert elapsed < 10


def test_07_semicontinuity_classification():
    _suite_criterion(7, "semi-continuity classification (regions, modules, finite posets)", "semicont-classify", 50, 10)


def test_08_nakayama():
    _suite_criterion(8, "nonzero top / socle for 20 generated and 20 co-generated modules", "nakayama", 20, 5)


def test_09_stability():
    _suite_criterion(9, "canonical interleavings at eps in {1/4, 1, 3} on 30 modules", "stability", 30, 10)


def test_10_isometry():
    _suite_criterion(10, "indicator distances: lower limits, sheaves and certificate search agree on 30 pairs",
                     "isometry", 30, 30)


def test_11_distance_to_zero():
    t = time.perf_counter()
    rng = random.Random(SEED)
    fam = standard_family(2)
    flags = tr_flags(fam)
    corpus = [direct_sum(*(G.rand_boundary_module(rng, 2)[0] for _ in range(rng.randint(1, 2)))) for _ in range(20)]
    corpus += [G.rand_module(rng, 2) for _ in range(20)]
    rng.shuffle(corpus)
    mismatches, n_eph, n_non = [], 0, 0
    for i, m in enumerate(corpus):
        eph = is_ephemeral(m)
        n_eph += eph
        n_non += not eph
        d = distance_to_zero(m, fam)
        if (d == 0) != eph:
            mismatches.append((i, str(d), eph))
    elapsed = time.perf_counter() - t
    ok = flags.TR1 and flags.TR2 and flags.TR3 and not mismatches and n_eph and n_non
    _record(11, f"distance to zero vanishes exactly on the {n_eph} ephemeral of 40 modules", ok, elapsed, 10,
            str(mismatches[:1]) if mismatches else "")
    assert flags.TR1 and flags.TR2 and flags.TR3
    assert not mismatches and n_eph and n_non
    assert elapsed < 10


def test_12_sections_oracle():
    _suite_criterion(12, "equalizer sections match sampled limits on 30 pairs", "sections", 30, 20)


if __name__ == "__main__":
    import sys

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    failed = 0
    for fn in tests:
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
