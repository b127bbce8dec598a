"""Order and way-below oracles for the supported continuous posets.

Points are tuples of :class:`fractions.Fraction`. Elements of a finite poset
are encoded as one-coordinate points holding the element index, so products
with finite factors flatten like everything else.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Union

from .errors import DimensionError, PreconditionError, UnsupportedPosetError
from .serialize import fmt_point, rat_str

Point = tuple  # tuple[Fraction, ...]


def as_point(coords: Iterable) -> Point:
    """Coerce numbers or ``"p/q"`` strings into an exact point."""
    if isinstance(coords, str):
        coords = [c for c in coords.split(",") if c.strip()]
    return tuple(Fraction(c.strip()) if isinstance(c, str) else Fraction(c) for c in coords)


def _rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    from .linalg import Matrix, RationalField, rank, use_field

    if not rows:
        return 0
    with use_field(RationalField()):
        return rank(Matrix.from_rows(rows, ncols))


@dataclass(frozen=True)
class RnStandard:
    n: int

    @property
    def dim(self) -> int:
        return self.n


@dataclass(frozen=True)
class RnNonNeg:
    n: int

    @property
    def dim(self) -> int:
        return self.n


@dataclass(frozen=True)
class RnCone:
    """R^n ordered by the cone ``{x : A x >= 0}`` with facet normals ``A``."""

    n: int
    facets: tuple

    def __post_init__(self):
        facets = tuple(tuple(Fraction(a) for a in row) for row in self.facets)
        object.__setattr__(self, "facets", facets)
        if any(len(r) != self.n for r in facets):
            raise DimensionError("facet normals must have length n")
        report = validate_cone(facets, self.n)
        if not report.valid:
            raise PreconditionError(f"invalid cone: {report.reason}")

    @property
    def dim(self) -> int:
        return self.n

    def apply(self, v: Point) -> tuple:
        return tuple(sum(a * x for a, x in zip(row, v) if a) for row in self.facets)


@dataclass(frozen=True)
class FinitePoset:
    """Elements ``0..size-1``; ``hasse`` lists strict relations ``(i, j)`` meaning ``i < j``."""

    size: int
    hasse: tuple = ()

    def __post_init__(self):
        pairs = tuple(sorted({(int(i), int(j)) for i, j in self.hasse}))
        object.__setattr__(self, "hasse", pairs)
        for i, j in pairs:
            if not (0 <= i < self.size and 0 <= j < self.size) or i == j:
                raise PreconditionError(f"bad Hasse pair {(i, j)}")
        self.reach  # noqa: B018 - validates acyclicity eagerly

    @property
    def dim(self) -> int:
        return 1

    @cached_property
    def reach(self) -> tuple:
        succ = [[] for _ in range(self.size)]
        for i, j in self.hasse:
            succ[i].append(j)
        reach = []
        for s in range(self.size):
            seen = {s}
            stack = [s]
            while stack:
                u = stack.pop()
                for w in succ[u]:
                    if w == s:
                        raise PreconditionError("Hasse relation contains a cycle")
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            reach.append(tuple(j in seen for j in range(self.size)))
        return tuple(reach)

    def element(self, x: Point) -> int:
        v = x[0]
        if v.denominator != 1 or not 0 <= v < self.size:
            raise DimensionError(f"{rat_str(v)} is not an element of a {self.size}-element poset")
        return int(v)


@dataclass(frozen=True)
class Product:
    factors: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise PreconditionError("a product needs at least one factor")

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors)

    def split(self, x: Point) -> list:
        out, i = [], 0
        for f in self.factors:
            out.append(x[i : i + f.dim])
            i += f.dim
        return out


PosetSpec = Union[RnStandard, RnNonNeg, RnCone, FinitePoset, Product]


def _check(poset, *points) -> None:
    dim = poset.dim
    for p in points:
        if len(p) != dim:
            raise DimensionError(f"point of length {len(p)} used with a {dim}-dimensional poset")
    if type(poset) is RnNonNeg:
        for p in points:
            if any(c < 0 for c in p):
                raise DimensionError(f"{fmt_point(p)} has a negative coordinate; not in the orthant")


def le(poset: PosetSpec, x: Point, y: Point) -> bool:
    _check(poset, x, y)
    t = type(poset)
    if t is RnStandard or t is RnNonNeg:
        return all(a <= b for a, b in zip(x, y))
    if t is RnCone:
        return all(c >= 0 for c in poset.apply([b - a for a, b in zip(x, y)]))
    if t is FinitePoset:
        return poset.reach[poset.element(x)][poset.element(y)]
    return all(le(f, a, b) for f, a, b in zip(poset.factors, poset.split(x), poset.split(y)))


def way_below(poset: PosetSpec, x: Point, y: Point) -> bool:
    _check(poset, x, y)
    t = type(poset)
    if t is RnStandard:
        return all(a < b for a, b in zip(x, y))
    if t is RnNonNeg:
        return all(a < b or a == 0 and b >= 0 for a, b in zip(x, y))
    if t is RnCone:
        return all(c > 0 for c in poset.apply([b - a for a, b in zip(x, y)]))
    if t is FinitePoset:
        return poset.reach[poset.element(x)][poset.element(y)]
    return all(way_below(f, a, b) for f, a, b in zip(poset.factors, poset.split(x), poset.split(y)))


def is_compact(poset: PosetSpec, x: Point) -> bool:
    return way_below(poset, x, x)


def interpolate(poset: PosetSpec, x: Point, z: Point) -> Point:
    """A point ``y`` with ``x << y << z``."""
    if not way_below(poset, x, z):
        raise PreconditionError(f"{fmt_point(x)} is not way below {fmt_point(z)}")
    if isinstance(poset, FinitePoset):
        return tuple(x)
    if isinstance(poset, Product):
        return tuple(
            c
            for f, a, b in zip(poset.factors, poset.split(x), poset.split(z))
            for c in interpolate(f, a, b)
        )
    return tuple((a + b) / 2 for a, b in zip(x, z))


def join(poset: PosetSpec, x: Point, y: Point) -> Point:
    if not isinstance(poset, (RnStandard, RnNonNeg)):
        raise UnsupportedPosetError(f"join is not available on {type(poset).__name__}")
    _check(poset, x, y)
    return tuple(max(a, b) for a, b in zip(x, y))


def meet(poset: PosetSpec, x: Point, y: Point) -> Point:
    if not isinstance(poset, (RnStandard, RnNonNeg)):
        raise UnsupportedPosetError(f"meet is not available on {type(poset).__name__}")
    _check(poset, x, y)
    return tuple(min(a, b) for a, b in zip(x, y))


@dataclass(frozen=True)
class ConeReport:
    valid: bool
    full_rank: bool
    interior_nonempty: bool
    reason: str = ""


def fourier_motzkin_feasible(system: Sequence[tuple[Sequence, Fraction]], nvars: int) -> bool:
    """Decide feasibility of ``{x : a·x >= b for (a, b) in system}`` exactly."""
    ineqs = {_normalize(tuple(Fraction(c) for c in a), Fraction(b)) for a, b in system}
    for k in range(nvars):
        pos, neg, rest = [], [], []
        for a, b in ineqs:
            (pos if a[k] > 0 else neg if a[k] < 0 else rest).append((a, b))
        new = set(rest)
        for ap, bp in pos:
            for an, bn in neg:
                sp, sn = ap[k], -an[k]
                a = tuple(x / sp + y / sn for x, y in zip(ap, an))
                new.add(_normalize(a, bp / sp + bn / sn))
        ineqs = new
    return all(b <= 0 for _, b in ineqs)


def _normalize(a: tuple, b: Fraction) -> tuple:
    lead = next((abs(c) for c in a if c), None)
    if lead is None:
        return a, b
    return tuple(c / lead for c in a), b / lead


def validate_cone(facets: Sequence[Sequence], n: int | None = None) -> ConeReport:
    """Check that ``{x : A x >= 0}`` is proper with non-empty interior."""
    rows = [tuple(Fraction(a) for a in r) for r in facets]
    if n is None:
        if not rows:
            return ConeReport(False, False, False, "no facets and no dimension given")
        n = len(rows[0])
    full_rank = _rank(rows, n) == n
    interior = fourier_motzkin_feasible([(r, Fraction(1)) for r in rows], n)
    reasons = []
    if not full_rank:
        reasons.append(f"rank(A) < {n}: cone is not proper")
    if not interior:
        reasons.append("A x >= 1 is infeasible: cone has empty interior")
    return ConeReport(full_rank and interior, full_rank, interior, "; ".join(reasons))


def poset_from_json(d: dict) -> PosetSpec:
    kind = d.get("kind")
    if kind == "rn":
        return RnStandard(int(d["dim"]))
    if kind == "orthant":
        return RnNonNeg(int(d["dim"]))
    if kind == "cone":
        facets = tuple(as_point(r) for r in d["facets"])
        return RnCone(int(d.get("dim", len(facets[0]) if facets else 0)), facets)
    if kind == "finite":
        return FinitePoset(int(d["size"]), tuple(tuple(p) for p in d.get("hasse", ())))
    if kind == "product":
        return Product(tuple(poset_from_json(f) for f in d["factors"]))
    raise ValueError(f"unknown poset kind {kind!r}")


def poset_to_json(p: PosetSpec) -> dict:
    if isinstance(p, RnStandard):
        return {"kind": "rn", "dim": p.n}
    if isinstance(p, RnNonNeg):
        return {"kind": "orthant", "dim": p.n}
    if isinstance(p, RnCone):
        return {"kind": "cone", "dim": p.n, "facets": [[rat_str(a) for a in r] for r in p.facets]}
    if isinstance(p, FinitePoset):
        return {"kind": "finite", "dim": 1, "size": p.size, "hasse": [list(h) for h in p.hasse]}
    return {"kind": "product", "dim": p.dim, "factors": [poset_to_json(f) for f in p.factors]}
