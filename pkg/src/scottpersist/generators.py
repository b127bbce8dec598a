"""Seeded random inputs for property checks.

Coordinates are rationals in [-5, 5] with denominator at most 4. Modules are
kept to R^1 and R^2 with at most four generators per staircase and cellwise
dimension at most three.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

from . import linalg as la
from . import poset as P
from .cellmod import CellModule, CellMorphism, common_refinement, direct_sum, from_grid_encoding, image, indicator
from .functors import PosetModule
from .regions import CLOSED, OPEN, ConvexRegion, Region, boundary, contains, down_set, up_set


def rand_rat(rng: random.Random, lo: int = -5, hi: int = 5) -> Fraction:
    d = rng.randint(1, 4)
    return Fraction(rng.randint(lo * d, hi * d), d)


def rand_point(rng: random.Random, n: int, lo: int = -5, hi: int = 5) -> tuple:
    return tuple(rand_rat(rng, lo, hi) for _ in range(n))


def rand_nonneg(rng: random.Random, n: int, p_zero: float = 0.3) -> tuple:
    return tuple(Fraction(0) if rng.random() < p_zero else rand_rat(rng, 0, 3) for _ in range(n))


def rand_flavor(rng: random.Random) -> str:
    return rng.choice((CLOSED, OPEN))


def rand_staircase(rng: random.Random, n: int, kind: str, flavor: str | None = None, max_gens: int = 4) -> Region:
    k = rng.randint(1, max_gens)
    gens = [rand_point(rng, n) for _ in range(k)]
    return Region(kind, flavor or rand_flavor(rng), tuple(gens))


def rand_region(rng: random.Random, n: int | None = None) -> Region:
    return rand_staircase(rng, n or rng.choice((1, 2)), rng.choice(("up", "down")))


def _rand_scalar_matrix(rng: random.Random, rows: int, cols: int) -> la.Matrix:
    return la.Matrix.from_rows([[rng.randint(-2, 2) for _ in range(cols)] for _ in range(rows)], cols)


def rand_image_module(rng: random.Random, n: int, max_gens: int = 2) -> CellModule:
    """Image of a random scalar map ``⊕ k[U_i] -> ⊕ k[D_j]``.

    A constant scalar between an up-set and a down-set indicator is always
    natural, so any scalar matrix gives a morphism.
    """
    center = rand_point(rng, n, -2, 2)
    ups = [_around(rng, center, "up", max_gens) for _ in range(rng.randint(1, 3))]
    downs = [_around(rng, center, "down", max_gens) for _ in range(rng.randint(1, 3))]
    src, tgt = common_refinement(direct_sum(*(indicator(u) for u in ups)), direct_sum(*(indicator(d) for d in downs)))
    A = _rand_scalar_matrix(rng, len(downs), len(ups))
    while A.is_zero():
        A = _rand_scalar_matrix(rng, len(downs), len(ups))
    K = src.complex
    maps = {}
    for c in K.cells():
        rep = K.representative(c)
        cols = [i for i, u in enumerate(ups) if contains(u, rep)]
        rows = [j for j, d in enumerate(downs) if contains(d, rep)]
        maps[c] = la.Matrix(len(rows), len(cols), tuple(tuple(A.entries[j][i] for i in cols) for j in rows))
    f = CellMorphism(src, tgt, maps, validate=False)
    out, _ = image(f)
    return out


def _around(rng: random.Random, center: tuple, kind: str, max_gens: int) -> Region:
    sign = -1 if kind == "up" else 1
    gens = [tuple(c + sign * rand_rat(rng, 0, 3) for c in center) for _ in range(rng.randint(1, max_gens))]
    return Region(kind, rand_flavor(rng), tuple(gens))


def rand_convex_sum(rng: random.Random, n: int) -> CellModule:
    parts = []
    for _ in range(rng.randint(1, 3)):
        kind = rng.choice(("up", "down"))
        outer = rand_staircase(rng, n, kind, max_gens=2)
        parts.append(indicator(rand_convex_inside(rng, outer)))
    return direct_sum(*parts)


def rand_convex_inside(rng: random.Random, outer: Region) -> ConvexRegion:
    """``outer ∖ inner`` with ``inner`` a random staircase nested in ``outer``."""
    sign = 1 if outer.kind == "up" else -1
    gens = []
    for _ in range(rng.randint(1, 2)):
        g = rng.choice(outer.gens)
        gens.append(tuple(c + sign * rand_rat(rng, 0, 3) for c in g))
    flavor = OPEN if outer.flavor == OPEN else rand_flavor(rng)
    inner = Region(outer.kind, flavor, tuple(gens))
    return ConvexRegion(outer, inner)


def rand_grid_module(rng: random.Random, n: int) -> CellModule:
    """A finitely determined module pulled back from a random module on an integer box."""
    lo = tuple(rng.randint(-3, 0) for _ in range(n))
    hi = tuple(a + rng.randint(1, 3) for a in lo)
    base = rand_image_module(rng, n)
    box = list(itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))))
    dims = {x: base.dim_at(x) for x in box}
    steps = {}
    for x in box:
        for axis in range(n):
            if x[axis] < hi[axis]:
                y = x[:axis] + (x[axis] + 1,) + x[axis + 1 :]
                steps[(x, axis)] = base.eval_map(x, y)
    return from_grid_encoding(lo, hi, dims, steps)


def rand_boundary_module(rng: random.Random, n: int | None = None) -> tuple:
    """``(k[∂R], ∂R)`` for a random staircase ``R`` (always ephemeral)."""
    r = rand_region(rng, n)
    b = boundary(r)
    return indicator(b), b


def rand_module(rng: random.Random, n: int | None = None) -> CellModule:
    n = n or rng.choice((1, 2))
    recipe = rng.random()
    if recipe < 0.5:
        return rand_image_module(rng, n)
    if recipe < 0.75:
        return rand_convex_sum(rng, n)
    if recipe < 0.9:
        return rand_grid_module(rng, n)
    return direct_sum(rand_boundary_module(rng, n)[0], rand_image_module(rng, n))


def rand_finitely_generated(rng: random.Random, n: int | None = None) -> CellModule:
    """Nonzero finite sum of quotients ``k[↑x] / k[V]`` with ``V ⊊ ↑x``."""
    n = n or rng.choice((1, 2))
    parts = []
    for _ in range(rng.randint(1, 3)):
        x = rand_point(rng, n)
        gens = [tuple(c + rand_rat(rng, 0, 3) for c in x) for _ in range(rng.randint(0, 2))]
        outer = up_set([x])
        if not gens:
            parts.append(indicator(outer))
            continue
        flavor = OPEN if any(g == x for g in gens) else rand_flavor(rng)
        parts.append(indicator(ConvexRegion(outer, Region("up", flavor, tuple(gens)))))
    return direct_sum(*parts)


def rand_finitely_cogenerated(rng: random.Random, n: int | None = None) -> CellModule:
    """Nonzero finite sum of submodules ``k[↓x ∖ E]`` of ``k[↓x]``."""
    n = n or rng.choice((1, 2))
    parts = []
    for _ in range(rng.randint(1, 3)):
        x = rand_point(rng, n)
        gens = [tuple(c - rand_rat(rng, 0, 3) for c in x) for _ in range(rng.randint(0, 2))]
        outer = down_set([x])
        if not gens:
            parts.append(indicator(outer))
            continue
        flavor = OPEN if any(g == x for g in gens) else rand_flavor(rng)
        parts.append(indicator(ConvexRegion(outer, Region("down", flavor, tuple(gens)))))
    return direct_sum(*parts)


def rand_finite_poset(rng: random.Random, size: int | None = None) -> P.FinitePoset:
    size = size or rng.randint(2, 6)
    pairs = [(i, j) for i in range(size) for j in range(i + 1, size) if rng.random() < 0.4]
    return P.FinitePoset(size, tuple(pairs))


def rand_poset_module(rng: random.Random, po: P.FinitePoset | None = None) -> PosetModule:
    """Pointwise restriction of a random scalar map between sums of principal indicators."""
    po = po or rand_finite_poset(rng)
    ups = [rng.randrange(po.size) for _ in range(rng.randint(1, 3))]
    downs = [rng.randrange(po.size) for _ in range(rng.randint(1, 3))]
    A = _rand_scalar_matrix(rng, len(downs), len(ups))
    reach = po.reach

    def image_basis(x):
        cols = [i for i, u in enumerate(ups) if reach[u][x]]
        rows = [j for j, d in enumerate(downs) if reach[x][d]]
        sub = la.Matrix(len(rows), len(cols), tuple(tuple(A.entries[j][i] for i in cols) for j in rows))
        return rows, la.image_basis(sub)

    bases = [image_basis(x) for x in range(po.size)]
    dims = [b.cols for _, b in bases]
    edges = {}
    for i, j in po.hasse:
        rows_i, bi = bases[i]
        rows_j, bj = bases[j]
        # restriction of the target sum k[↓d] from i to j keeps the rows common to both
        proj = la.Matrix(
            len(rows_j), len(rows_i), tuple(tuple(int(r == s) for s in rows_i) for r in rows_j)
        )
        edges[(i, j)] = la.solve(bj, proj @ bi) if bj.cols else la.zeros(0, bi.cols)
    return PosetModule(po, dims, edges)


def rand_poset(rng: random.Random, variant: str):
    if variant == "rn":
        return P.RnStandard(rng.randint(1, 3))
    if variant == "orthant":
        return P.RnNonNeg(rng.randint(1, 3))
    if variant == "cone":
        return P.RnCone(2, ((1, 0), (1, 1)))
    if variant == "finite":
        return rand_finite_poset(rng)
    if variant == "product":
        return P.Product((P.RnStandard(1), P.RnNonNeg(1), rand_finite_poset(rng)))
    raise ValueError(variant)


def rand_poset_point(rng: random.Random, po) -> tuple:
    if isinstance(po, P.FinitePoset):
        return (Fraction(rng.randrange(po.size)),)
    if isinstance(po, P.RnNonNeg):
        return rand_nonneg(rng, po.dim, 0.3)
    if isinstance(po, P.Product):
        return sum((rand_poset_point(rng, f) for f in po.factors), ())
    return tuple(rand_rat(rng, -2, 2) for _ in range(po.dim))


def rand_above(rng: random.Random, po, x: tuple) -> tuple:
    """A point that is often (not always) above ``x``, with frequent ties."""
    if isinstance(po, P.FinitePoset):
        ups = [j for j in range(po.size) if po.reach[int(x[0])][j]]
        pool = ups if rng.random() < 0.8 else list(range(po.size))
        return (Fraction(rng.choice(pool)),)
    if isinstance(po, P.Product):
        out, i = (), 0
        for f in po.factors:
            out += rand_above(rng, f, x[i : i + f.dim])
            i += f.dim
        return out
    step = rand_nonneg(rng, po.dim, 0.3)
    if rng.random() < 0.2:
        step = tuple(-c for c in step)
    y = tuple(a + b for a, b in zip(x, step))
    if isinstance(po, P.RnNonNeg):
        y = tuple(max(c, Fraction(0)) for c in y)
    return y
