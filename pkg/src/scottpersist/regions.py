"""Staircase regions: finitely generated up-sets and down-sets and their differences."""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from . import poset as P
from .errors import DimensionError, PreconditionError, UnsupportedPosetError
from .serialize import fmt_point, parse_rat, rat_str

CLOSED = "closed"
OPEN = "open"


@dataclass(frozen=True)
class Region:
    """``∪ ↑g`` / ``∪ ⇑g`` (kind ``up``) or ``∪ ↓g`` / ``∪ ⇓g`` (kind ``down``).

    Generators are reduced to an antichain on construction. An empty generator
    list is the empty region.
    """

    kind: str
    flavor: str
    gens: tuple
    poset: P.PosetSpec = None

    def __post_init__(self):
        if self.kind not in ("up", "down"):
            raise ValueError(f"kind must be 'up' or 'down', not {self.kind!r}")
        if self.flavor not in (CLOSED, OPEN):
            raise ValueError(f"flavor must be 'closed' or 'open', not {self.flavor!r}")
        gens = tuple(dict.fromkeys(P.as_point(g) for g in self.gens))
        if self.poset is None:
            if not gens:
                raise DimensionError("an empty region needs an explicit poset")
            object.__setattr__(self, "poset", P.RnStandard(len(gens[0])))
        for g in gens:
            if len(g) != self.poset.dim:
                raise DimensionError("generator dimension does not match the poset")
        object.__setattr__(self, "gens", _reduce(gens, self.kind, self.poset))

    @property
    def dim(self) -> int:
        return self.poset.dim

    @property
    def is_empty(self) -> bool:
        return not self.gens

    def with_flavor(self, flavor: str) -> "Region":
        return Region(self.kind, flavor, self.gens, self.poset)

    def __repr__(self):
        arrow = {("up", CLOSED): "↑", ("up", OPEN): "⇑", ("down", CLOSED): "↓", ("down", OPEN): "⇓"}[
            (self.kind, self.flavor)
        ]
        if not self.gens:
            return "∅"
        return " ∪ ".join(arrow + "(" + ",".join(rat_str(c) for c in g) + ")" for g in self.gens)


def _reduce(gens: tuple, kind: str, poset) -> tuple:
    keep = []
    for g in gens:
        dominated = False
        for h in gens:
            if h == g:
                continue
            if (P.le(poset, h, g) if kind == "up" else P.le(poset, g, h)):
                dominated = True
                break
        if not dominated:
            keep.append(g)
    return tuple(sorted(keep))


def up_set(gens, flavor: str = CLOSED, poset=None) -> Region:
    return Region("up", flavor, tuple(gens), poset)


def down_set(gens, flavor: str = CLOSED, poset=None) -> Region:
    return Region("down", flavor, tuple(gens), poset)


@dataclass(frozen=True)
class ConvexRegion:
    """``outer ∖ inner`` for nested regions of the same kind (``inner`` may be ``None``)."""

    outer: Region
    inner: Optional[Region] = None

    def __post_init__(self):
        if self.inner is not None:
            if self.inner.kind != self.outer.kind:
                raise PreconditionError("outer and inner regions must be of the same kind")
            if self.inner.poset != self.outer.poset:
                raise PreconditionError("outer and inner regions live in different posets")
            if not subset(self.inner, self.outer):
                raise PreconditionError(f"{self.inner} is not contained in {self.outer}")

    @property
    def poset(self):
        return self.outer.poset

    @property
    def dim(self) -> int:
        return self.outer.dim

    @property
    def kind(self) -> str:
        return self.outer.kind

    def __repr__(self):
        return f"({self.outer}) ∖ ({self.inner if self.inner is not None else '∅'})"


AnyRegion = Union[Region, ConvexRegion]


def contains(region: AnyRegion, p) -> bool:
    p = P.as_point(p)
    if isinstance(region, ConvexRegion):
        return contains(region.outer, p) and not (region.inner is not None and contains(region.inner, p))
    if len(p) != region.dim:
        raise DimensionError(f"point {fmt_point(p)} does not match region dimension {region.dim}")
    rel = P.le if region.flavor == CLOSED else P.way_below
    if region.kind == "up":
        return any(rel(region.poset, g, p) for g in region.gens)
    return any(rel(region.poset, p, g) for g in region.gens)


def _require(poset, allowed, op):
    if not isinstance(poset, allowed):
        names = "/".join(a.__name__ for a in allowed)
        raise UnsupportedPosetError(f"{op} needs a {names} poset, got {type(poset).__name__}")


def _covered(a, a_flavor: str, b_region: Region) -> bool:
    """Whether the basic region at ``a`` (of ``b_region``'s kind) lies inside ``b_region``."""
    po = b_region.poset
    for b in b_region.gens:
        lo, hi = (b, a) if b_region.kind == "up" else (a, b)
        if a_flavor == CLOSED and b_region.flavor == OPEN:
            if P.way_below(po, lo, hi):
                return True
        elif P.le(po, lo, hi):
            return True
    return False


def subset(a: Region, b: Region) -> bool:
    """Exact inclusion ``a ⊆ b`` for staircases of the same kind."""
    if a.kind != b.kind:
        raise PreconditionError("inclusion is only decided between regions of the same kind")
    _require(a.poset, (P.RnStandard, P.RnCone, P.FinitePoset), "inclusion test")
    return all(_covered(g, a.flavor, b) for g in a.gens)


def region_equal(a: Region, b: Region) -> bool:
    return subset(a, b) and subset(b, a)


def interior(u: Region) -> Region:
    """Scott (= standard) interior of an up-set: ``⋃ ⇑g``."""
    if u.kind != "up":
        raise PreconditionError("interior() takes an up-set; use interior_down() for down-sets")
    _require(u.poset, (P.RnStandard, P.RnCone), "interior")
    return u.with_flavor(OPEN)


def interior_down(d: Region) -> Region:
    if d.kind != "down":
        raise PreconditionError("interior_down() takes a down-set")
    _require(d.poset, (P.RnStandard,), "interior_down")
    return d.with_flavor(OPEN)


def closure(r: Region) -> Region:
    _require(r.poset, (P.RnStandard,), "closure")
    return r.with_flavor(CLOSED)


def open_part(r: Region) -> Region:
    """``⇑R`` for up-sets, ``⇓R`` for down-sets."""
    return interior(r) if r.kind == "up" else interior_down(r)


def boundary(r: Region) -> ConvexRegion:
    _require(r.poset, (P.RnStandard,), "boundary")
    return ConvexRegion(closure(r), open_part(r))


@dataclass(frozen=True)
class MeagerResult:
    """Three-valued verdict: ``meager`` is True, False or None (unknown)."""

    meager: Optional[bool]
    certificate: Optional[str] = None
    witness: Optional[tuple] = None

    def __post_init__(self):
        if self.certificate is not None and self.witness is not None:
            raise ValueError("a verdict carries a certificate or a witness, never both")


def _as_convex(s: AnyRegion) -> ConvexRegion:
    return s if isinstance(s, ConvexRegion) else ConvexRegion(s, None)


def _corner_points(s: ConvexRegion) -> list:
    gens = list(s.outer.gens) + (list(s.inner.gens) if s.inner is not None else [])
    axes = [sorted({g[i] for g in gens}) for i in range(s.dim)]
    pts = list(gens)
    for a, b in itertools.combinations(gens, 2):
        pts.append(tuple((x + y) / 2 for x, y in zip(a, b)))
    half = Fraction(1, 2)
    grid = [sorted(set(a) | {c - half for c in a} | {c + half for c in a}) for a in axes]
    if math.prod(len(g) for g in grid) <= 4096:
        pts.extend(itertools.product(*grid))
    return pts


def _random_points(s: ConvexRegion, rng: random.Random, count: int) -> list:
    gens = list(s.outer.gens) + (list(s.inner.gens) if s.inner is not None else [])
    lo = [min(g[i] for g in gens) - 1 for i in range(s.dim)]
    hi = [max(g[i] for g in gens) + 1 for i in range(s.dim)]
    return [
        tuple(Fraction(rng.randint(math.floor(l * 8), math.ceil(h * 8)), 8) for l, h in zip(lo, hi))
        for _ in range(count)
    ]


def is_meager(s: AnyRegion, seed: int = 0, n_random: int = 1000) -> MeagerResult:
    """Certify, refute (with a pair ``x ≪ y`` inside ``s``) or give up.

    Certification recognises subsets of ``cl R ∖ Int R``. Refutation tries
    corner and grid points with small diagonal steps, then ``n_random``
    seeded random pairs.
    """
    s = _as_convex(s)
    _require(s.poset, (P.RnStandard,), "is_meager")
    if s.outer.is_empty:
        return MeagerResult(True, certificate="empty region")
    if s.inner is not None and subset(open_part(s.outer), s.inner):
        return MeagerResult(True, certificate="inner contains the interior of the closed outer region")
    deltas = [Fraction(1), Fraction(1, 2), Fraction(1, 8), Fraction(1, 64), Fraction(1, 1024)]
    for x in _corner_points(s):
        if not contains(s, x):
            continue
        for d in deltas:
            y = tuple(c + d for c in x)
            if contains(s, y):
                return MeagerResult(False, witness=(x, y))
    rng = random.Random(seed)
    for x in _random_points(s, rng, n_random):
        y = tuple(c + Fraction(rng.randint(1, 64), 64) for c in x)
        if contains(s, x) and contains(s, y):
            return MeagerResult(False, witness=(x, y))
    return MeagerResult(None)


def is_injective_indicator_region(d: Region) -> bool:
    """Open, upward-directed down-set (decided on generator joins)."""
    if d.kind != "down":
        raise PreconditionError("expected a down-set")
    _require(d.poset, (P.RnStandard,), "is_injective_indicator_region")
    if d.flavor != OPEN or d.is_empty:
        return False
    return all(contains(d, P.join(d.poset, a, b)) for a, b in itertools.combinations(d.gens, 2))


def region_to_json(r: AnyRegion) -> dict:
    if isinstance(r, ConvexRegion):
        return {"outer": region_to_json(r.outer), "inner": region_to_json(r.inner) if r.inner is not None else None}
    out = {"kind": r.kind, "flavor": r.flavor, "gens": [[rat_str(c) for c in g] for g in r.gens]}
    if not isinstance(r.poset, P.RnStandard):
        out["poset"] = P.poset_to_json(r.poset)
    elif not r.gens:
        out["dim"] = r.dim
    return out


def region_from_json(d: dict) -> AnyRegion:
    if "outer" in d:
        outer = region_from_json(d["outer"])
        inner = region_from_json(d["inner"]) if d.get("inner") is not None else None
        return ConvexRegion(outer, inner)
    gens = tuple(tuple(parse_rat(c) for c in g) for g in d.get("gens", ()))
    if "poset" in d:
        poset = P.poset_from_json(d["poset"])
    elif not gens:
        poset = P.RnStandard(int(d["dim"]))
    else:
        poset = None
    return Region(d["kind"], d.get("flavor", CLOSED), gens, poset)
