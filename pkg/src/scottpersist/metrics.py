"""Translation families, interleaving certificates and exact interleaving distances."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import linalg as la
from . import poset as P
from .cellmod import CellModule, CellMorphism, map_cell, shift
from .errors import (
    ComplexMismatchError,
    DimensionError,
    NotComputableError,
    PreconditionError,
    TranslationError,
    UnsupportedPosetError,
)
from .functors import is_ephemeral, overline, underline
from .regions import CLOSED, OPEN, ConvexRegion, Region, down_set, up_set
from .serialize import fmt_point, parse_rat, rat_str

INF = math.inf
Distance = Union[Fraction, float]


@dataclass(frozen=True)
class SuperlinearFamily:
    """Affine translations ``T_eps(x) = x + eps v``."""

    v: tuple
    poset: P.PosetSpec = None

    def __post_init__(self):
        v = P.as_point(self.v)
        object.__setattr__(self, "v", v)
        if self.poset is None:
            object.__setattr__(self, "poset", P.RnStandard(len(v)))
        po = self.poset
        if not isinstance(po, (P.RnStandard, P.RnCone)):
            raise UnsupportedPosetError("translation families are built on R^n or a cone order")
        if len(v) != po.dim:
            raise DimensionError("direction has the wrong dimension")
        if any(c < 0 for c in _facet_values(po, v)):
            raise TranslationError(f"{fmt_point(v)} is not a nonnegative direction, so x <= T(x) fails")

    def apply(self, x, eps) -> tuple:
        eps = Fraction(eps)
        return tuple(a + eps * b for a, b in zip(P.as_point(x), self.v))


def standard_family(n: int) -> SuperlinearFamily:
    return SuperlinearFamily((1,) * n)


def _facet_rows(po) -> list:
    if isinstance(po, P.RnCone):
        return [tuple(Fraction(c) for c in row) for row in po.facets]
    return [tuple(Fraction(int(i == j)) for j in range(po.dim)) for i in range(po.dim)]


def _facet_values(po, v) -> list:
    return [sum(a * b for a, b in zip(row, v)) for row in _facet_rows(po)]


@dataclass(frozen=True)
class TRFlags:
    TR1: bool
    TR2: bool
    TR3: bool
    witnesses: dict = field(default_factory=dict)


def tr_flags(fam: SuperlinearFamily, poset: P.PosetSpec | None = None) -> TRFlags:
    """Evaluate the three translation conditions for an affine family.

    TR1: translations are order isomorphisms, always true for ``x -> x + eps v``.
    TR2: every ``T_eps`` with ``eps > 0`` is a strong translation, i.e. ``eps v``
    lies in the interior of the cone of nonnegative vectors.
    TR3: for ``p << q``, ``p <= p + eps v <= q`` for
    ``eps = min_r (r.(q-p)) / (r.v)`` over facet rows with ``r.v > 0`` (any
    ``eps > 0`` when there is none); this holds for every valid direction,
    including ``v = 0``.
    """
    po = poset if poset is not None else fam.poset
    if not isinstance(po, (P.RnStandard, P.RnCone)):
        raise UnsupportedPosetError("tr_flags needs R^n or a cone order")
    if po != fam.poset:
        fam = SuperlinearFamily(fam.v, po)
    vals = _facet_values(po, fam.v)
    witnesses = {}
    tr2 = all(c > 0 for c in vals)
    if not tr2:
        k = next(i for i, c in enumerate(vals) if c <= 0)
        witnesses["TR2"] = {"facet": k, "value": rat_str(vals[k]), "reason": "x is not way below x + eps v"}
    return TRFlags(True, tr2, True, witnesses)


def _require(fam: SuperlinearFamily, *names: str) -> None:
    flags = tr_flags(fam)
    for name in names:
        if not getattr(flags, name):
            raise TranslationError(f"{name} fails for direction {fmt_point(fam.v)}: {flags.witnesses.get(name)}")


# --------------------------------------------------------------------------- certificates


@dataclass(frozen=True)
class InterleavingCertificate:
    """``f: M -> T*N`` and ``g: N -> T*M`` for ``T(x) = x + eps v``."""

    eps: Fraction
    v: tuple
    f: CellMorphism
    g: CellMorphism


def _check_triangle(m: CellModule, f: CellMorphism, g: CellMorphism, eps: Fraction, v: tuple) -> Optional[tuple]:
    """First point where ``g(p + eps v) f(p) != M(p <= p + 2 eps v)``, or ``None``."""
    step = tuple(eps * c for c in v)
    K = f.complex.union(
        g.complex.translated([-c for c in step]),
        m.complex,
        m.complex.translated([-2 * c for c in step]),
    )
    f_at = K.axis_maps(f.complex)
    g_at = K.axis_maps(g.complex, step)
    m_at = K.axis_maps(m.complex)
    m2_at = K.axis_maps(m.complex, [2 * c for c in step])
    for cell in K.cells():
        lo, hi = map_cell(m_at, cell), map_cell(m2_at, cell)
        if not (m.dims[lo] and m.dims[hi]):
            continue
        lhs = g.maps[map_cell(g_at, cell)] @ f.maps[map_cell(f_at, cell)]
        if lhs != m.path_map(lo, hi):
            return K.representative(cell)
    return None


def check_interleaving(m: CellModule, n: CellModule, cert: InterleavingCertificate, explain: bool = False):
    """Exact check of naturality and both triangle identities.

    Returns a bool, or ``(bool, reason)`` with ``explain=True``. Morphisms whose
    complexes do not refine the modules involved raise ComplexMismatchError.
    """
    eps, v = Fraction(cert.eps), P.as_point(cert.v)
    if m.n != n.n or len(v) != m.n:
        raise DimensionError("modules and direction must have the same dimension")

    def result(ok, why=None):
        return (ok, why) if explain else ok

    for name, mor, src, tgt in (("f", cert.f, m, shift(n, v, eps)), ("g", cert.g, n, shift(m, v, eps))):
        if not mor.complex.refines(src.complex) or not mor.complex.refines(tgt.complex):
            raise ComplexMismatchError(f"{name} is not defined on a refinement of its source and target")
        if not (mor.source.same(src) and mor.target.same(tgt)):
            return result(False, f"{name} has the wrong source or target")
        bad = mor.naturality_defects()
        if bad:
            return result(False, f"{name} is not natural at cell {bad[0][0]} axis {bad[0][1]}")
    p = _check_triangle(m, cert.f, cert.g, eps, v)
    if p is not None:
        return result(False, f"triangle for the first module fails at {tuple(rat_str(c) for c in p)}")
    p = _check_triangle(n, cert.g, cert.f, eps, v)
    if p is not None:
        return result(False, f"triangle for the second module fails at {tuple(rat_str(c) for c in p)}")
    return result(True)


def _pointwise_morphism(src: CellModule, tgt_unshifted: CellModule, v, eps, build) -> CellMorphism:
    """Morphism ``src -> T*tgt`` with matrix ``build(cell of p, cell of p + eps v)`` at ``p``.

    The cells passed to ``build`` are those of ``src`` and of the unshifted target.
    """
    tgt = shift(tgt_unshifted, v, eps)
    K = src.complex.union(tgt.complex)
    s, t = src.refine_to(K), tgt.refine_to(K)
    p_at = K.axis_maps(src.complex)
    q_at = K.axis_maps(tgt_unshifted.complex, [eps * c for c in v])
    maps = {cell: build(map_cell(p_at, cell), map_cell(q_at, cell)) for cell in K.cells()}
    return CellMorphism(s, t, maps, validate=False)


def canonical_interleaving(m: CellModule, which: str, eps, fam: SuperlinearFamily) -> tuple:
    """``eps``-interleaving between ``M`` and its lower (``overline``) or upper limit.

    Returns ``(other_module, certificate)``. Needs ``v >> 0`` so that ``p`` is way
    below ``p + eps v``.
    """
    _require(fam, "TR1", "TR2")
    eps = Fraction(eps)
    if eps <= 0:
        raise PreconditionError("canonical interleavings need eps > 0")
    v = fam.v
    if len(v) != m.n:
        raise DimensionError("direction has the wrong dimension")
    K = m.complex
    if which == "overline":
        other = overline(m).output
        f = _pointwise_morphism(m, other, v, eps, lambda a, b: m.path_map(a, K.lower(b)))
        g = _pointwise_morphism(other, m, v, eps, lambda a, b: m.path_map(K.lower(a), b))
    elif which == "underline":
        other = underline(m).output
        f = _pointwise_morphism(m, other, v, eps, lambda a, b: m.path_map(a, K.upper(b)))
        g = _pointwise_morphism(other, m, v, eps, lambda a, b: m.path_map(K.upper(a), b))
    else:
        raise ValueError("which must be 'overline' or 'underline'")
    return other, InterleavingCertificate(eps, v, f, g)


def identity_certificate(m: CellModule, v) -> InterleavingCertificate:
    v = P.as_point(v)
    f = _pointwise_morphism(m, m, v, Fraction(0), lambda a, b: la.identity(m.dims[a]))
    return InterleavingCertificate(Fraction(0), v, f, f)


def enlarge_certificate(m: CellModule, n: CellModule, cert: InterleavingCertificate, eps) -> InterleavingCertificate:
    """Push a certificate at ``cert.eps`` up to ``eps >= cert.eps`` along the internal maps."""
    eps = Fraction(eps)
    if eps < cert.eps:
        raise PreconditionError("certificates only move to larger eps")
    v = cert.v
    old = [Fraction(cert.eps) * c for c in v]
    new = [eps * c for c in v]

    def grow(mor, src, tgt):
        shifted = shift(tgt, v, eps)
        K = src.complex.union(shifted.complex, mor.complex, tgt.complex.translated([-c for c in old]))
        mor_at = K.axis_maps(mor.complex)
        mid_at = K.axis_maps(tgt.complex, old)
        end_at = K.axis_maps(tgt.complex, new)
        maps = {
            c: tgt.path_map(map_cell(mid_at, c), map_cell(end_at, c)) @ mor.maps[map_cell(mor_at, c)]
            for c in K.cells()
        }
        return CellMorphism(src.refine_to(K), shifted.refine_to(K), maps, validate=False)

    return InterleavingCertificate(eps, v, grow(cert.f, m, n), grow(cert.g, n, m))


def certificate_to_json(cert: InterleavingCertificate) -> dict:
    from .cellmod import morphism_to_json

    return {
        "eps": rat_str(cert.eps),
        "v": [rat_str(c) for c in cert.v],
        "f": morphism_to_json(cert.f),
        "g": morphism_to_json(cert.g),
    }


def certificate_from_json(d: dict, m: CellModule, n: CellModule) -> InterleavingCertificate:
    from .cellmod import morphism_from_json

    eps = parse_rat(d["eps"])
    v = P.as_point(d["v"])
    f = morphism_from_json(d["f"], m, shift(n, v, eps))
    g = morphism_from_json(d["g"], n, shift(m, v, eps))
    return InterleavingCertificate(eps, v, f, g)


# --------------------------------------------------------------------------- distances


def _pair_threshold(a, a_flavor, b, b_flavor, rows, vals) -> Distance:
    """Least ``eps`` (as an infimum) with ``a + eps v`` inside the basic up-set at ``b``."""
    strict = a_flavor == CLOSED and b_flavor == OPEN
    t = Fraction(0)
    for row, rv in zip(rows, vals):
        gap = sum(c * (y - x) for c, x, y in zip(row, a, b))
        if rv > 0:
            t = max(t, gap / rv)
        elif gap > 0 or (strict and gap == 0):
            return INF
    return t


def _containment_eps(r1: Region, r2: Region, rows, vals) -> Distance:
    """Infimum ``eps`` with ``r1 + eps v ⊆ r2`` (up-sets given by generators)."""
    worst = Fraction(0)
    for a in r1.gens:
        best = min((_pair_threshold(a, r1.flavor, b, r2.flavor, rows, vals) for b in r2.gens), default=INF)
        worst = max(worst, best)
    return worst


def distance_indicator(r1: Region, r2: Region, fam: SuperlinearFamily) -> Distance:
    """Interleaving distance between ``k[r1]`` and ``k[r2]`` for staircases of one kind.

    Up-sets are interleaved at ``eps`` exactly when each contains the other
    translated by ``eps v``; down-sets are handled by negating coordinates. The
    infimum is returned whether or not it is attained. Coordinates where the
    direction vanishes can make the distance infinite.
    """
    for r in (r1, r2):
        if isinstance(r, ConvexRegion):
            raise NotComputableError("distances between convex differences are certificate-only")
    if r1.kind != r2.kind:
        raise PreconditionError("both regions must be up-sets or both down-sets")
    if r1.poset != r2.poset:
        raise PreconditionError("regions live in different posets")
    po = r1.poset
    if not isinstance(po, (P.RnStandard, P.RnCone)):
        raise UnsupportedPosetError("indicator distances are computed on R^n or a cone order")
    if fam.poset != po:
        fam = SuperlinearFamily(fam.v, po)
    _require(fam, "TR1")
    if r1.is_empty or r2.is_empty:
        return Fraction(0) if r1.is_empty and r2.is_empty else INF
    rows = _facet_rows(po)
    vals = _facet_values(po, fam.v)
    if r1.kind == "down":
        neg = lambda r: Region("up", r.flavor, tuple(tuple(-c for c in g) for g in r.gens), po)  # noqa: E731
        r1, r2 = neg(r1), neg(r2)
    return max(_containment_eps(r1, r2, rows, vals), _containment_eps(r2, r1, rows, vals))


def _axis_times(iv_src, iv_dst, vi) -> tuple:
    """``{t >= 0 : t vi in dst - src}`` as ``(lo, lo_closed, hi, hi_closed)``, or ``None`` if empty."""
    slo, slc, shi, shc = iv_src
    dlo, dlc, dhi, dhc = iv_dst
    lo = None if dlo is None or shi is None else dlo - shi
    hi = None if dhi is None or slo is None else dhi - slo
    lo_c, hi_c = dlc and shc, dhc and slc
    if vi == 0:
        ok_lo = lo is None or lo < 0 or (lo == 0 and lo_c)
        ok_hi = hi is None or hi > 0 or (hi == 0 and hi_c)
        return (Fraction(0), True, None, False) if ok_lo and ok_hi else None
    if lo is not None:
        lo = lo / vi
    if hi is not None:
        hi = hi / vi
    if lo is None or lo < 0:
        lo, lo_c = Fraction(0), True
    if hi is not None and (hi < lo or (hi == lo and not (hi_c and lo_c))):
        return None
    return lo, lo_c, hi, hi_c


def _intersect(a, b):
    if a is None or b is None:
        return None
    alo, alc, ahi, ahc = a
    blo, blc, bhi, bhc = b
    if alo > blo:
        lo, lc = alo, alc
    elif blo > alo:
        lo, lc = blo, blc
    else:
        lo, lc = alo, alc and blc
    if ahi is None:
        hi, hc = bhi, bhc
    elif bhi is None:
        hi, hc = ahi, ahc
    elif ahi < bhi:
        hi, hc = ahi, ahc
    elif bhi < ahi:
        hi, hc = bhi, bhc
    else:
        hi, hc = ahi, ahc and bhc
    if hi is not None and (hi < lo or (hi == lo and not (lc and hc))):
        return None
    return lo, lc, hi, hc


def distance_to_zero(m: CellModule, fam: SuperlinearFamily) -> Distance:
    """Interleaving distance from ``M`` to the zero module.

    ``M`` is ``eps``-interleaved with 0 iff every ``M(p <= p + 2 eps v)`` vanishes,
    so the distance is half the supremum of the lengths ``t`` with a nonzero
    ``M(p <= p + t v)``, read off cell pairs.
    """
    _require(fam, "TR1", "TR2", "TR3")
    v = fam.v
    if len(v) != m.n:
        raise DimensionError("direction has the wrong dimension")
    if is_ephemeral(m):
        return Fraction(0)
    K = m.complex
    support = m.support()
    best = Fraction(0)
    for c in support:
        for d in support:
            if any(x > y for x, y in zip(c, d)):
                continue
            times = (Fraction(0), True, None, False)
            for axis in range(K.n):
                times = _intersect(
                    times, _axis_times(K.stratum_interval(axis, c[axis]), K.stratum_interval(axis, d[axis]), v[axis])
                )
                if times is None:
                    break
            if times is None:
                continue
            hi = times[2]
            if hi is not None and hi / 2 <= best:
                continue
            if m.path_map(c, d).is_zero():
                continue
            if hi is None:
                return INF
            best = hi / 2
    return best


def recognize_indicator(m: CellModule) -> Optional[Region]:
    """The staircase ``R`` with ``m ≅ k[R]``, if there is one (``None`` otherwise)."""
    from .cellmod import indicator, isomorphic

    if m.max_dim() != 1:
        return None
    K = m.complex
    support = set(m.support())

    def corner(cell, side):
        pt = []
        for axis, s in enumerate(cell):
            lo, _, hi, _ = K.stratum_interval(axis, s)
            end = lo if side == "low" else hi
            if end is None:
                return None
            pt.append(end)
        return tuple(pt)

    for kind in ("up", "down"):
        side = "low" if kind == "up" else "high"
        extreme = []
        for c in support:
            neigh = [
                c[:i] + (c[i] + (-1 if kind == "up" else 1),) + c[i + 1 :]
                for i in range(K.n)
            ]
            if not any(x in support for x in neigh):
                extreme.append(c)
        gens = [corner(c, side) for c in extreme]
        if not gens or any(g is None for g in gens):
            continue
        for flavor in (CLOSED, OPEN):
            r = Region(kind, flavor, tuple(gens))
            if isomorphic(indicator(r), m):
                return r
    return None


def distance_scott(m: CellModule, n: CellModule, fam: SuperlinearFamily) -> Distance:
    """Distance between the sheaf classes of ``M`` and ``N``, via their lower representatives."""
    _require(fam, "TR1", "TR2")
    a, b = overline(m).output, overline(n).output
    if a.is_zero() and b.is_zero():
        return Fraction(0)
    if a.is_zero():
        return distance_to_zero(b, fam)
    if b.is_zero():
        return distance_to_zero(a, fam)
    ra, rb = recognize_indicator(a), recognize_indicator(b)
    if ra is None or rb is None or ra.kind != rb.kind:
        raise NotComputableError("pair is outside the indicator class; supply an interleaving certificate instead")
    return distance_indicator(ra, rb, fam)


# --------------------------------------------------------------------------- search oracle


def candidate_eps(m: CellModule, n: CellModule, v) -> list:
    """Nonnegative breakpoint gaps along ``v``, plus 0."""
    out = {Fraction(0)}
    for axis, vi in enumerate(v):
        if vi <= 0:
            continue
        pts = set(m.complex.breakpoints[axis]) | set(n.complex.breakpoints[axis])
        for x in pts:
            for y in pts:
                if y >= x:
                    out.add((y - x) / vi)
    return sorted(out)


def _scalar_morphism(src: CellModule, tgt: CellModule, v, eps, c) -> CellMorphism:
    def build(a, b):
        d_src, d_tgt = src.dims[a], tgt.dims[b]
        if c and d_src == d_tgt == 1:
            return la.scalar(1, 1)
        return la.zeros(d_tgt, d_src)

    return _pointwise_morphism(src, tgt, v, eps, build)


def interleaved_by_scalars(m: CellModule, n: CellModule, v, eps) -> Optional[InterleavingCertificate]:
    """Search ``f, g`` among ``0`` and the identity on overlaps for thin modules."""
    v, eps = P.as_point(v), Fraction(eps)
    for cf in (1, 0):
        f = _scalar_morphism(m, n, v, eps, cf)
        if not f.is_natural():
            continue
        for cg in (1, 0):
            g = _scalar_morphism(n, m, v, eps, cg)
            cert = InterleavingCertificate(eps, v, f, g)
            if check_interleaving(m, n, cert):
                return cert
    return None


def search_distance(m: CellModule, n: CellModule, fam: SuperlinearFamily) -> Distance:
    """Brute-force distance between thin modules over the candidate set.

    Each candidate ``eps`` is tested both as is and nudged up by less than half
    the smallest gap, which detects infima that are not attained. Uses binary
    search, relying on monotonicity in ``eps``.
    """
    v = fam.v
    cands = candidate_eps(m, n, v)
    gaps = [b - a for a, b in zip(cands, cands[1:])]
    delta = min(gaps) / 4 if gaps else Fraction(1)

    def ok(e):
        return interleaved_by_scalars(m, n, v, e) is not None or interleaved_by_scalars(m, n, v, e + delta) is not None

    if not ok(cands[-1]):
        return INF
    lo, hi = -1, len(cands) - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(cands[mid]):
            hi = mid
        else:
            lo = mid
    return cands[hi]


def distance_to_json(d: Distance) -> str:
    return "inf" if d == INF else rat_str(d)
