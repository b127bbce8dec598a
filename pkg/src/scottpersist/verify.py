"""Property suites over seeded random cases, producing deterministic JSON reports."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Callable

from . import linalg as la
from . import poset as P
from . import generators as G
from .cellmod import CellModule, indicator, isomorphic, module_to_json, sections
from .functors import (
    PosetModule,
    apply_functor,
    indicator_closed_form,
    is_ephemeral,
    is_lower_semicontinuous,
    is_upper_semicontinuous,
    l1_top,
    overline,
    r1_socle,
    scott_radical,
    scott_socle,
    scott_top,
    underline,
)
from .metrics import (
    INF,
    SuperlinearFamily,
    canonical_interleaving,
    check_interleaving,
    distance_indicator,
    distance_scott,
    distance_to_json,
    distance_to_zero,
    search_distance,
    standard_family,
    tr_flags,
)
from .regions import ConvexRegion, Region, boundary, closure, interior, is_meager, region_to_json, up_set
from .serialize import rat_str


def _case_rng(seed: int, suite: str, i: int) -> random.Random:
    return random.Random(f"{suite}:{seed}:{i}")


def _iso(a: CellModule, b: CellModule) -> bool:
    return a.same(b) or isomorphic(a, b)


def _is_zero_or_iso(m: CellModule, r) -> bool:
    if r is None:
        return m.is_zero()
    return _iso(m, indicator(r))


def _run(suite: str, seed: int, cases: int, one: Callable) -> dict:
    results = []
    for i in range(cases):
        rng = _case_rng(seed, suite, i)
        checks, inputs = one(rng)
        for prop, ok, witness in checks:
            entry = {"case": i, "property": prop, "ok": bool(ok), "inputs": inputs}
            if not ok:
                entry["witness"] = witness
            results.append(entry)
    failures = sum(not r["ok"] for r in results)
    return {"suite": suite, "seed": seed, "cases": cases, "checks": len(results), "failures": failures,
            "passed": failures == 0, "results": results}


def _mod_inputs(m: CellModule) -> dict:
    return {"module": module_to_json(m)}


# --------------------------------------------------------------------------- suites


WAY_BELOW_VARIANTS = ("rn", "orthant", "cone", "finite", "product")


def way_below_triples(seed: int, cases: int) -> dict:
    """``{variant: (poset, [(x, y, z), ...])}`` with ``y``, ``z`` often above their predecessor."""
    out = {}
    for variant in WAY_BELOW_VARIANTS:
        rng = _case_rng(seed, "way-below:" + variant, 0)
        po = G.rand_poset(rng, variant)
        triples = []
        for _ in range(cases):
            x = G.rand_poset_point(rng, po)
            y = G.rand_above(rng, po, x)
            triples.append((x, y, G.rand_above(rng, po, y)))
        out[variant] = (po, triples)
    rng = _case_rng(seed, "way-below:cone-identity", 0)
    std = P.RnStandard(2)
    pairs = []
    for _ in range(cases):
        x = G.rand_poset_point(rng, std)
        pairs.append((x, G.rand_above(rng, std, x), ()))
    out["cone-identity"] = (P.RnCone(2, ((1, 0), (0, 1))), pairs)
    return out


def way_below_failures(po, triples) -> list:
    le, wb = P.le, P.way_below
    bad = []
    if isinstance(po, P.RnCone) and po.facets == ((1, 0), (0, 1)):
        std = P.RnStandard(2)
        for x, y, _ in triples:
            if wb(std, x, y) != wb(po, x, y) or le(std, x, y) != le(po, x, y):
                bad.append(("identity cone agrees with R^n", x, y, ()))
        return bad
    finite = isinstance(po, P.FinitePoset)
    for x, y, z in triples:
        xy, yz, xz = wb(po, x, y), wb(po, y, z), wb(po, x, z)
        lxy = le(po, x, y)
        if xy and not lxy:
            bad.append(("way-below implies below", x, y, z))
        if lxy and yz and not xz:
            bad.append(("below then way-below", x, y, z))
        if xy and le(po, y, z) and not xz:
            bad.append(("way-below then below", x, y, z))
        if xz:
            m = P.interpolate(po, x, z)
            if not (wb(po, x, m) and wb(po, m, z)):
                bad.append(("interpolation", x, m, z))
        if finite and xy != lxy:
            bad.append(("finite way-below equals order", x, y, z))
    return bad


def suite_way_below(seed: int, cases: int) -> dict:
    results = [
        _batch_entry(name, po, cases, way_below_failures(po, triples))
        for name, (po, triples) in way_below_triples(seed, cases).items()
    ]
    failures = sum(not r["ok"] for r in results)
    return {"suite": "way-below", "seed": seed, "cases": cases, "checks": len(results), "failures": failures,
            "passed": failures == 0, "results": results}


def _batch_entry(name, po, cases, bad) -> dict:
    entry = {"case": name, "property": f"way-below basic properties on {cases} triples", "ok": not bad,
             "inputs": {"poset": P.poset_to_json(po)}}
    if bad:
        what, *pts = bad[0]
        entry["witness"] = {"failed": what, "points": [[rat_str(c) for c in p] for p in pts]}
    return entry


def suite_interval_closure(seed: int, cases: int) -> dict:
    names = ("overline", "underline", "soc", "rad", "top", "r1soc", "l1top")

    def one(rng):
        kind = "up" if rng.random() < 0.5 else "down"
        r = G.rand_staircase(rng, rng.choice((1, 2)), kind)
        m = indicator(r)
        checks = []
        for name in names:
            ok = _is_zero_or_iso(apply_functor(name, m), indicator_closed_form(r, name))
            checks.append((f"{name} of a {kind}-set indicator matches its region form", ok, repr(r)))
        return checks, {"region": region_to_json(r)}

    return _run("interval-closure", seed, cases, one)


EXPECTED_SEMICONT = {
    ("up", "closed"): (True, False),
    ("up", "open"): (False, True),
    ("down", "closed"): (False, True),
    ("down", "open"): (True, False),
}


def suite_semicont_classify(seed: int, cases: int) -> dict:
    combos = sorted(EXPECTED_SEMICONT)

    def one(rng):
        kind, flavor = combos[rng.randrange(4)]
        r = G.rand_staircase(rng, rng.choice((1, 2)), kind, flavor)
        k = indicator(r)
        up, low = is_upper_semicontinuous(k), is_lower_semicontinuous(k)
        checks = [(f"semi-continuity of a {flavor} {kind}-set indicator", (up, low) == EXPECTED_SEMICONT[(kind, flavor)],
                   {"upper": up, "lower": low})]
        m = G.rand_module(rng)
        up, low = is_upper_semicontinuous(m), is_lower_semicontinuous(m)
        soc0, r10 = scott_socle(m).is_zero, r1_socle(m).is_zero()
        top0, l10 = scott_top(m).is_zero, l1_top(m).is_zero()
        checks.append(("upper iff socle and first derived socle vanish", up == (soc0 and r10),
                       {"upper": up, "soc0": soc0, "r1soc0": r10}))
        checks.append(("lower iff top and first derived top vanish", low == (top0 and l10),
                       {"lower": low, "top0": top0, "l1top0": l10}))
        pm = G.rand_poset_module(rng)
        checks.append(("finite-poset modules are bi-semi-continuous",
                       is_upper_semicontinuous(pm) and is_lower_semicontinuous(pm), None))
        return checks, {"region": region_to_json(r), **_mod_inputs(m)}

    return _run("semicont-classify", seed, cases, one)


def suite_line_composition(seed: int, cases: int) -> dict:
    def one(rng):
        m = G.rand_module(rng)
        ov, un = overline(m).output, underline(m).output
        return [
            ("overline is idempotent", _iso(overline(ov).output, ov), None),
            ("underline is idempotent", _iso(underline(un).output, un), None),
            ("underline of overline is underline", _iso(underline(ov).output, un), None),
            ("overline of underline is overline", _iso(overline(un).output, ov), None),
        ], _mod_inputs(m)

    return _run("line-composition", seed, cases, one)


def suite_exactness(seed: int, cases: int) -> dict:
    def one(rng):
        m = G.rand_module(rng)
        K = m.complex
        ov, un = overline(m).output, underline(m).output
        soc, top = scott_socle(m).output, scott_top(m).output
        r1, l1 = r1_socle(m), l1_top(m)
        bad_a = [c for c in K.cells() if soc.dims[c] - m.dims[c] + un.dims[c] - r1.dims[c]]
        bad_b = [c for c in K.cells() if l1.dims[c] - ov.dims[c] + m.dims[c] - top.dims[c]]
        return [
            ("socle sequence dimensions alternate to zero", not bad_a, bad_a[:1]),
            ("top sequence dimensions alternate to zero", not bad_b, bad_b[:1]),
        ], _mod_inputs(m)

    return _run("exactness", seed, cases, one)


def suite_soc_top_connection(seed: int, cases: int) -> dict:
    def one(rng):
        m = G.rand_module(rng)
        ov, un = overline(m).output, underline(m).output
        return [
            ("derived socle of the lower limit is the top of the upper limit", _iso(r1_socle(ov), scott_top(un).output), None),
            ("derived top of the upper limit is the socle of the lower limit", _iso(l1_top(un), scott_socle(ov).output), None),
        ], _mod_inputs(m)

    return _run("soc-top-connection", seed, cases, one)


def ephemeral_checks(m: CellModule, region=None) -> list:
    """Compare ``is_ephemeral`` with each equivalent criterion (and meagerness for indicators)."""
    eph = is_ephemeral(m)
    facts = {
        "lower limit vanishes": overline(m).is_zero,
        "upper limit vanishes": underline(m).is_zero,
        "socle is everything": scott_socle(m).output.dims == m.dims,
        "top is everything": scott_top(m).output.dims == m.dims,
        "radical vanishes": scott_radical(m).is_zero,
    }
    if region is not None:
        facts["support is meager"] = is_meager(region).meager
    return [(f"ephemeral iff {k}", eph == v, {"ephemeral": eph, k: v}) for k, v in facts.items()]


def suite_ephemeral_equiv(seed: int, cases: int) -> dict:
    def one(rng):
        region = None
        pick = rng.random()
        if pick < 0.25:
            m, region = G.rand_boundary_module(rng)
        elif pick < 0.5:
            n = rng.choice((1, 2))
            region = G.rand_convex_inside(rng, G.rand_staircase(rng, n, rng.choice(("up", "down")), max_gens=2))
            m = indicator(region)
        else:
            m = G.rand_module(rng)
        inputs = _mod_inputs(m)
        if region is not None:
            inputs["region"] = region_to_json(region)
        return ephemeral_checks(m, region), inputs

    return _run("ephemeral-equiv", seed, cases, one)


def suite_nakayama(seed: int, cases: int) -> dict:
    def one(rng):
        a = G.rand_finitely_generated(rng)
        b = G.rand_finitely_cogenerated(rng)
        return [
            ("nonzero finitely generated module has nonzero top", not a.is_zero() and not scott_top(a).is_zero, None),
            ("nonzero finitely co-generated module has nonzero socle", not b.is_zero() and not scott_socle(b).is_zero, None),
            ("finitely generated nonzero module is not lower semi-continuous", not is_lower_semicontinuous(a), None),
        ], {"generated": module_to_json(a), "cogenerated": module_to_json(b)}

    return _run("nakayama", seed, cases, one)


STABILITY_EPS = (Fraction(1, 4), Fraction(1), Fraction(3))


def suite_stability(seed: int, cases: int) -> dict:
    def one(rng):
        m = G.rand_module(rng)
        fam = standard_family(m.n)
        checks = []
        for which in ("overline", "underline"):
            for eps in STABILITY_EPS:
                other, cert = canonical_interleaving(m, which, eps, fam)
                ok, why = check_interleaving(m, other, cert, explain=True)
                checks.append((f"canonical {which} interleaving at eps={rat_str(eps)}", ok, why))
        return checks, _mod_inputs(m)

    return _run("stability", seed, cases, one)


def _lower_region(r: Region) -> Region:
    return interior(r) if r.kind == "up" else closure(r)


def suite_isometry(seed: int, cases: int) -> dict:
    def one(rng):
        n = rng.choice((1, 2))
        kind = rng.choice(("up", "down"))
        r1 = G.rand_staircase(rng, n, kind, max_gens=3)
        r2 = G.rand_staircase(rng, n, kind, max_gens=3)
        fam = standard_family(n)
        d = distance_indicator(r1, r2, fam)
        d_low = distance_indicator(_lower_region(r1), _lower_region(r2), fam)
        m1, m2 = indicator(r1), indicator(r2)
        d_sheaf = distance_scott(m1, m2, fam)
        d_oracle = search_distance(m1, m2, fam)
        wit = {k: distance_to_json(v) for k, v in
               (("indicator", d), ("lower", d_low), ("scott", d_sheaf), ("search", d_oracle))}
        return [
            ("distance unchanged by passing to lower limits", d == d_low, wit),
            ("sheaf distance equals module distance", d == d_sheaf, wit),
            ("distance matches certificate search", d == d_oracle, wit),
        ], {"a": region_to_json(r1), "b": region_to_json(r2)}

    return _run("isometry", seed, cases, one)


def suite_distance_zero(seed: int, cases: int) -> dict:
    def one(rng):
        if rng.random() < 0.5:
            parts = [G.rand_boundary_module(rng, 2)[0] for _ in range(rng.randint(1, 2))]
            from .cellmod import direct_sum

            m = direct_sum(*parts)
        else:
            m = G.rand_module(rng, 2)
        fam = standard_family(m.n)
        flags = tr_flags(fam)
        ok_flags = flags.TR1 and flags.TR2 and flags.TR3
        d = distance_to_zero(m, fam)
        eph = is_ephemeral(m)
        return [
            ("standard family satisfies all translation conditions", ok_flags, None),
            ("distance to zero vanishes exactly on ephemeral modules", (d == 0) == eph,
             {"distance": distance_to_json(d), "ephemeral": eph}),
        ], _mod_inputs(m)

    return _run("distance-zero", seed, cases, one)


def suite_meager_boundary(seed: int, cases: int) -> dict:
    def one(rng):
        r = G.rand_region(rng)
        b = boundary(r)
        res = is_meager(b)
        x = G.rand_point(rng, r.dim)
        y = tuple(c + G.rand_rat(rng, 1, 3) / 1 for c in x)
        thick = ConvexRegion(up_set([x]), up_set([y], "open"))
        res2 = is_meager(thick)
        return [
            ("staircase boundary is certified meager", res.meager is True, repr(b)),
            ("thick difference has a way-below witness", res2.meager is False, repr(thick)),
        ], {"region": region_to_json(r), "thick": region_to_json(thick)}

    return _run("meager-boundary", seed, cases, one)


def suite_finite_poset(seed: int, cases: int) -> dict:
    def one(rng):
        pm = G.rand_poset_module(rng)
        po = pm.poset
        same_order = all(
            P.way_below(po, (i,), (j,)) == P.le(po, (i,), (j,)) for i in range(po.size) for j in range(po.size)
        )
        return [
            ("way-below is the order on a finite poset", same_order, None),
            ("lower and upper limits are the module itself",
             overline(pm).output is pm and underline(pm).output is pm, None),
            ("finite-poset modules are bi-semi-continuous",
             is_upper_semicontinuous(pm) and is_lower_semicontinuous(pm), None),
            ("socle and top vanish, radical is everything",
             scott_socle(pm).is_zero and scott_top(pm).is_zero and scott_radical(pm).output is pm, None),
            ("only zero is ephemeral", is_ephemeral(pm) == pm.is_zero(), None),
        ], {"poset": P.poset_to_json(po), "dims": list(pm.dims)}

    return _run("finite-poset", seed, cases, one)


def brute_force_limit_dim(m: CellModule, u: Region) -> int:
    """Limit of ``M`` over a finite grid sample of ``U``, by direct linear algebra.

    The grid uses every breakpoint, generator coordinate and midpoint, one point
    beyond each end, and, for open regions, each generator coordinate nudged up
    by less than any gap.
    """
    n = m.n
    axes = []
    for i in range(n):
        base = set(m.complex.breakpoints[i]) | {g[i] for g in u.gens}
        pts = sorted(base)
        gaps = [b - a for a, b in zip(pts, pts[1:])]
        delta = min(gaps) / 8 if gaps else Fraction(1, 8)
        coords = set(pts) | {(a + b) / 2 for a, b in zip(pts, pts[1:])}
        coords |= {pts[0] - 1, pts[-1] + 1}
        coords |= {g[i] + delta for g in u.gens}
        axes.append(sorted(coords))
    from .regions import contains

    sample = [p for p in itertools.product(*axes) if contains(u, p)]
    index = {}
    nvars = 0
    for p in sample:
        index[p] = nvars
        nvars += m.dim_at(p)
    rows = []
    pos = {tuple(p): tuple(axes[i].index(p[i]) for i in range(n)) for p in sample}
    for p in sample:
        for i in range(n):
            k = pos[p][i]
            if k + 1 >= len(axes[i]):
                continue
            q = p[:i] + (axes[i][k + 1],) + p[i + 1 :]
            if q not in index:
                continue
            A = m.eval_map(p, q)
            for r in range(A.rows):
                row = {index[q] + r: -1}
                for c in range(A.cols):
                    if A.entries[r][c]:
                        row[index[p] + c] = row.get(index[p] + c, 0) + A.entries[r][c]
                rows.append(row)
    return nvars - la.sparse_rank(rows)


def suite_sections(seed: int, cases: int) -> dict:
    def one(rng):
        m = G.rand_module(rng, rng.choice((1, 2)))
        u = G.rand_staircase(rng, m.n, "up", max_gens=3)
        dim, _ = sections(m, u)
        brute = brute_force_limit_dim(m, u)
        return [("equalizer sections match a sampled limit", dim == brute, {"equalizer": dim, "sampled": brute})], {
            **_mod_inputs(m), "region": region_to_json(u)}

    return _run("sections", seed, cases, one)


SUITES = {
    "line-composition": suite_line_composition,
    "interval-closure": suite_interval_closure,
    "semicont-classify": suite_semicont_classify,
    "soc-top-connection": suite_soc_top_connection,
    "exactness": suite_exactness,
    "ephemeral-equiv": suite_ephemeral_equiv,
    "nakayama": suite_nakayama,
    "stability": suite_stability,
    "isometry": suite_isometry,
    "meager-boundary": suite_meager_boundary,
    "finite-poset": suite_finite_poset,
    "way-below": suite_way_below,
    "distance-zero": suite_distance_zero,
    "sections": suite_sections,
}


def run_suite(name: str, seed: int = 0, cases: int = 20) -> dict:
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](seed, cases)
