"""Constructible persistence modules over R^n on rational grid stratifications.

Each axis with breakpoints ``r_1 < ... < r_k`` is cut into ``2k + 1`` strata,
indexed ``0 .. 2k``: even indices are the open intervals ``(r_j, r_{j+1})``
(with ``r_0 = -inf`` and ``r_{k+1} = +inf``), odd index ``2j + 1`` is the point
``{r_{j+1}}``. A cell is a tuple of stratum indices. A :class:`CellModule`
stores a vector-space dimension per cell and, for every cell and axis, the
step matrix to the next cell along that axis. Maps inside a cell are the
identity.
"""
from __future__ import annotations

import itertools
import random
from bisect import bisect_left
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg as la
from . import poset as P
from .errors import CommutationError, ComplexMismatchError, DimensionError, PreconditionError
from .linalg import Matrix
from .regions import AnyRegion, ConvexRegion, Region, contains
from .serialize import fmt_point, parse_rat, rat_str


class CellComplex:
    __slots__ = ("breakpoints", "shape", "_hash")

    def __init__(self, breakpoints: Sequence[Iterable]):
        bps = []
        for axis in breakpoints:
            vals = [Fraction(x) for x in axis]
            if any(a >= b for a, b in zip(vals, vals[1:])):
                raise ValueError("breakpoints must be strictly increasing")
            bps.append(tuple(vals))
        self.breakpoints = tuple(bps)
        self.shape = tuple(2 * len(b) + 1 for b in self.breakpoints)
        self._hash = None

    @classmethod
    def from_points(cls, points: Iterable, n: int) -> "CellComplex":
        axes = [set() for _ in range(n)]
        for p in points:
            for i, c in enumerate(p):
                axes[i].add(Fraction(c))
        return cls([sorted(a) for a in axes])

    @property
    def n(self) -> int:
        return len(self.breakpoints)

    def __eq__(self, other):
        return isinstance(other, CellComplex) and self.breakpoints == other.breakpoints

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.breakpoints)
        return self._hash

    def __repr__(self):
        return "CellComplex(" + "; ".join(",".join(rat_str(x) for x in b) for b in self.breakpoints) + ")"

    def cells(self):
        return itertools.product(*(range(s) for s in self.shape))

    def num_cells(self) -> int:
        out = 1
        for s in self.shape:
            out *= s
        return out

    def locate(self, p: Sequence) -> tuple:
        if len(p) != self.n:
            raise DimensionError(f"point of length {len(p)} in a {self.n}-dimensional complex")
        out = []
        for x, bps in zip(p, self.breakpoints):
            j = bisect_left(bps, x)
            out.append(2 * j + 1 if j < len(bps) and bps[j] == x else 2 * j)
        return tuple(out)

    def axis_maps(self, other: "CellComplex", offset: Sequence | None = None) -> list:
        """Per axis, the stratum of ``other`` holding each stratum of ``self`` moved by ``offset``.

        Only meaningful when ``self`` refines ``other`` translated by ``-offset``.
        """
        out = []
        for i in range(self.n):
            d = offset[i] if offset is not None else 0
            bps = other.breakpoints[i]
            row = []
            for s in range(self.shape[i]):
                x = self.stratum_point(i, s) + d
                j = bisect_left(bps, x)
                row.append(2 * j + 1 if j < len(bps) and bps[j] == x else 2 * j)
            out.append(row)
        return out

    def stratum_point(self, axis: int, s: int) -> Fraction:
        bps = self.breakpoints[axis]
        k = len(bps)
        if s % 2:
            return bps[(s - 1) // 2]
        j = s // 2
        if k == 0:
            return Fraction(0)
        if j == 0:
            return bps[0] - 1
        if j == k:
            return bps[-1] + 1
        return (bps[j - 1] + bps[j]) / 2

    def representative(self, cell: Sequence[int]) -> tuple:
        return tuple(self.stratum_point(i, s) for i, s in enumerate(cell))

    def stratum_interval(self, axis: int, s: int):
        """``(lo, lo_closed, hi, hi_closed)``; ``None`` marks an infinite end."""
        bps = self.breakpoints[axis]
        if s % 2:
            r = bps[(s - 1) // 2]
            return r, True, r, True
        j = s // 2
        lo = bps[j - 1] if j > 0 else None
        hi = bps[j] if j < len(bps) else None
        return lo, False, hi, False

    def union(self, *others: "CellComplex") -> "CellComplex":
        for o in others:
            if o.n != self.n:
                raise DimensionError("complexes of different dimension")
        return CellComplex([sorted(set(self.breakpoints[i]).union(*(o.breakpoints[i] for o in others))) for i in range(self.n)])

    def refines(self, other: "CellComplex") -> bool:
        return other.n == self.n and all(set(o) <= set(s) for s, o in zip(self.breakpoints, other.breakpoints))

    def translated(self, delta: Sequence) -> "CellComplex":
        return CellComplex([[b + d for b in bps] for bps, d in zip(self.breakpoints, delta)])

    def lower(self, cell: Sequence[int]) -> tuple:
        """Cell holding points just below every coordinate of points in ``cell``."""
        return tuple(s - 1 if s % 2 else s for s in cell)

    def upper(self, cell: Sequence[int]) -> tuple:
        return tuple(s + 1 if s % 2 else s for s in cell)

    def successor(self, cell: tuple, axis: int):
        if cell[axis] + 1 >= self.shape[axis]:
            return None
        return cell[:axis] + (cell[axis] + 1,) + cell[axis + 1 :]


class CellModule:
    """A persistence module over R^n, constant on the cells of a complex."""

    def __init__(self, complex: CellComplex, dims: Mapping, steps: Mapping | None = None, validate: bool = True):
        self.complex = complex
        self.dims = {c: int(dims.get(c, 0)) for c in complex.cells()}
        self.steps: dict = {}
        for (cell, axis), m in (steps or {}).items():
            cell = tuple(cell)
            succ = complex.successor(cell, axis)
            if succ is None:
                raise DimensionError(f"cell {cell} has no successor along axis {axis}")
            if m.shape != (self.dims[succ], self.dims[cell]):
                raise DimensionError(
                    f"step at {cell} axis {axis} has shape {m.shape}, expected {(self.dims[succ], self.dims[cell])}"
                )
            if m.rows and m.cols and not m.is_zero():
                self.steps[(cell, axis)] = m
        self._paths: dict = {}
        if validate:
            self.check_commutation()

    @property
    def n(self) -> int:
        return self.complex.n

    def step(self, cell: tuple, axis: int) -> Matrix:
        m = self.steps.get((cell, axis))
        if m is not None:
            return m
        succ = self.complex.successor(cell, axis)
        return la.zeros(self.dims[succ], self.dims[cell])

    def check_commutation(self) -> None:
        K = self.complex
        for cell in K.cells():
            for i, j in itertools.combinations(range(K.n), 2):
                si, sj = K.successor(cell, i), K.successor(cell, j)
                if si is None or sj is None:
                    continue
                a = self.step(si, j) @ self.step(cell, i)
                b = self.step(sj, i) @ self.step(cell, j)
                if a != b:
                    raise CommutationError(f"square at cell {cell} on axes {i},{j} does not commute")

    def path_map(self, a: tuple, b: tuple) -> Matrix:
        """Composite of steps from cell ``a`` to cell ``b >= a``."""
        key = (a, b)
        hit = self._paths.get(key)
        if hit is not None:
            return hit
        if any(x > y for x, y in zip(a, b)):
            raise PreconditionError(f"cell {b} is not above cell {a}")
        m = la.identity(self.dims[a])
        cur = a
        for axis in range(self.n):
            while cur[axis] < b[axis]:
                m = self.step(cur, axis) @ m
                cur = cur[:axis] + (cur[axis] + 1,) + cur[axis + 1 :]
        self._paths[key] = m
        return m

    def dim_at(self, p) -> int:
        return self.dims[self.complex.locate(P.as_point(p))]

    def eval_map(self, p, q) -> Matrix:
        """``M(p <= q)``."""
        p, q = P.as_point(p), P.as_point(q)
        if len(p) != self.n or len(q) != self.n:
            raise DimensionError("point dimension does not match the module")
        if not all(a <= b for a, b in zip(p, q)):
            raise PreconditionError(f"{fmt_point(p)} is not below {fmt_point(q)}")
        return self.path_map(self.complex.locate(p), self.complex.locate(q))

    def is_zero(self) -> bool:
        return not any(self.dims.values())

    def max_dim(self) -> int:
        return max(self.dims.values(), default=0)

    def support(self) -> list:
        return [c for c, d in self.dims.items() if d]

    def refine_to(self, K: CellComplex) -> "CellModule":
        if K == self.complex:
            return self
        if not K.refines(self.complex):
            raise ComplexMismatchError("target complex does not refine the module's complex")
        maps = K.axis_maps(self.complex)
        old = {c: tuple(m[x] for m, x in zip(maps, c)) for c in K.cells()}
        dims = {c: self.dims[old[c]] for c in K.cells()}
        steps = {}
        for c in K.cells():
            if not dims[c]:
                continue
            for axis in range(K.n):
                s = K.successor(c, axis)
                if s is not None and dims[s]:
                    steps[(c, axis)] = self.path_map(old[c], old[s])
        return CellModule(K, dims, steps, validate=False)

    def refine(self, extra: Sequence[Iterable]) -> "CellModule":
        return self.refine_to(self.complex.union(CellComplex(extra)))

    def same(self, other: "CellModule") -> bool:
        """Identical data after common refinement (stronger than isomorphism)."""
        K = self.complex.union(other.complex)
        a, b = self.refine_to(K), other.refine_to(K)
        return a.dims == b.dims and a.steps == b.steps

    def __repr__(self):
        return f"CellModule({self.complex}, support={len(self.support())} cells, max dim {self.max_dim()})"


def zero_module(K: CellComplex) -> CellModule:
    return CellModule(K, {}, {}, validate=False)


def common_refinement(*modules: CellModule) -> list:
    K = modules[0].complex.union(*(m.complex for m in modules[1:]))
    return [m.refine_to(K) for m in modules]


def _region_points(r: AnyRegion) -> list:
    if isinstance(r, ConvexRegion):
        return list(r.outer.gens) + (list(r.inner.gens) if r.inner is not None else [])
    return list(r.gens)


def indicator(r: AnyRegion, complex: CellComplex | None = None) -> CellModule:
    """``k[R]``: one-dimensional with identity maps on ``R``, zero elsewhere."""
    if not isinstance(r.poset, P.RnStandard):
        raise PreconditionError("indicator modules are built over the standard order on R^n")
    K = CellComplex.from_points(_region_points(r), r.dim)
    if complex is not None:
        K = K.union(complex)
    inside = {c: contains(r, K.representative(c)) for c in K.cells()}
    one = la.identity(1)
    steps = {}
    for c, ok in inside.items():
        if not ok:
            continue
        for axis in range(K.n):
            s = K.successor(c, axis)
            if s is not None and inside[s]:
                steps[(c, axis)] = one
    return CellModule(K, {c: int(v) for c, v in inside.items()}, steps, validate=False)


def map_cell(maps: list, cell: tuple) -> tuple:
    return tuple(m[x] for m, x in zip(maps, cell))


def from_grid_encoding(lo: Sequence[int], hi: Sequence[int], dims: Mapping, steps: Mapping) -> CellModule:
    """Pull back a module on the integer box ``[lo, hi]`` along the convex projection.

    ``dims`` maps integer points of the box to dimensions, ``steps`` maps
    ``(point, axis)`` to the matrix ``N(x <= x + e_axis)``. The projection sends
    ``x`` to ``max(lo, min(ceil(x), hi))`` coordinatewise.
    """
    n = len(lo)
    lo, hi = tuple(int(a) for a in lo), tuple(int(b) for b in hi)
    box = list(itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))))
    ndims = {tuple(x): int(dims.get(tuple(x), 0)) for x in box}

    def nstep(x, axis):
        y = x[:axis] + (x[axis] + 1,) + x[axis + 1 :]
        m = steps.get((x, axis))
        return m if m is not None else la.zeros(ndims[y], ndims[x])

    for x in box:
        for axis in range(n):
            if x[axis] < hi[axis]:
                m = nstep(x, axis)
                y = x[:axis] + (x[axis] + 1,) + x[axis + 1 :]
                if m.shape != (ndims[y], ndims[x]):
                    raise DimensionError(f"grid step at {x} axis {axis} has the wrong shape")
        for i, j in itertools.combinations(range(n), 2):
            if x[i] < hi[i] and x[j] < hi[j]:
                xi = x[:i] + (x[i] + 1,) + x[i + 1 :]
                xj = x[:j] + (x[j] + 1,) + x[j + 1 :]
                if nstep(xi, j) @ nstep(x, i) != nstep(xj, i) @ nstep(x, j):
                    raise CommutationError(f"grid square at {x} on axes {i},{j} does not commute")

    K = CellComplex([range(a, b + 1) for a, b in zip(lo, hi)])

    def proj(axis, s):
        k = hi[axis] - lo[axis] + 1
        if s % 2:
            return lo[axis] + (s - 1) // 2
        j = s // 2
        return lo[axis] + min(j, k - 1)

    def grid_path(x, y):
        m = la.identity(ndims[x])
        cur = x
        for axis in range(n):
            while cur[axis] < y[axis]:
                m = nstep(cur, axis) @ m
                cur = cur[:axis] + (cur[axis] + 1,) + cur[axis + 1 :]
        return m

    image = {c: tuple(proj(i, s) for i, s in enumerate(c)) for c in K.cells()}
    mdims = {c: ndims[image[c]] for c in K.cells()}
    msteps = {}
    for c in K.cells():
        for axis in range(n):
            s = K.successor(c, axis)
            if s is not None and mdims[c] and mdims[s]:
                msteps[(c, axis)] = grid_path(image[c], image[s])
    return CellModule(K, mdims, msteps, validate=False)


def direct_sum(*modules: CellModule) -> CellModule:
    if not modules:
        raise ValueError("direct_sum needs at least one module")
    if len({m.n for m in modules}) != 1:
        raise DimensionError("summands live over different R^n")
    ms = common_refinement(*modules)
    K = ms[0].complex
    dims = {c: sum(m.dims[c] for m in ms) for c in K.cells()}
    steps = {}
    for c in K.cells():
        if not dims[c]:
            continue
        for axis in range(K.n):
            s = K.successor(c, axis)
            if s is not None and dims[s]:
                steps[(c, axis)] = la.block_diag([m.step(c, axis) for m in ms])
    return CellModule(K, dims, steps, validate=False)


def shift(m: CellModule, v: Sequence, eps) -> CellModule:
    """``T*M`` for ``T(x) = x + eps v``: the value at ``p`` is ``M`` at ``p + eps v``."""
    v = P.as_point(v)
    eps = Fraction(eps)
    if len(v) != m.n:
        raise DimensionError("shift direction has the wrong dimension")
    if eps < 0 or any(c < 0 for c in v):
        raise PreconditionError("shifts need eps >= 0 and v >= 0")
    K = m.complex.translated([-eps * c for c in v])
    return CellModule(K, m.dims, m.steps, validate=False)


# --------------------------------------------------------------------------- morphisms


class CellMorphism:
    """A natural transformation given by one matrix per cell of a shared complex."""

    def __init__(self, source: CellModule, target: CellModule, maps: Mapping, validate: bool = True):
        if source.complex != target.complex:
            raise ComplexMismatchError("source and target must share a complex")
        self.source = source
        self.target = target
        self.complex = source.complex
        self.maps = {}
        for c in self.complex.cells():
            m = maps.get(c)
            shape = (target.dims[c], source.dims[c])
            if m is None:
                m = la.zeros(*shape)
            elif m.shape != shape:
                raise DimensionError(f"morphism matrix at {c} has shape {m.shape}, expected {shape}")
            self.maps[c] = m
        if validate:
            self.check_naturality()

    def naturality_defects(self) -> list:
        bad = []
        K = self.complex
        for c in K.cells():
            for axis in range(K.n):
                s = K.successor(c, axis)
                if s is None or not (self.source.dims[c] and self.target.dims[s]):
                    continue
                if self.target.step(c, axis) @ self.maps[c] != self.maps[s] @ self.source.step(c, axis):
                    bad.append((c, axis))
        return bad

    def check_naturality(self) -> None:
        bad = self.naturality_defects()
        if bad:
            raise CommutationError(f"morphism is not natural at {bad[0]}")

    def is_natural(self) -> bool:
        return not self.naturality_defects()

    def at(self, p) -> Matrix:
        return self.maps[self.complex.locate(P.as_point(p))]

    def is_iso(self) -> bool:
        return all(la.is_invertible(m) for m in self.maps.values())

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.maps.values())

    def refine_to(self, K: CellComplex) -> "CellMorphism":
        if K == self.complex:
            return self
        if not K.refines(self.complex):
            raise ComplexMismatchError("target complex does not refine the morphism's complex")
        axes = K.axis_maps(self.complex)
        maps = {c: self.maps[tuple(m[x] for m, x in zip(axes, c))] for c in K.cells()}
        return CellMorphism(self.source.refine_to(K), self.target.refine_to(K), maps, validate=False)

    def then(self, other: "CellMorphism") -> "CellMorphism":
        """``other ∘ self``."""
        K = self.complex.union(other.complex)
        a, b = self.refine_to(K), other.refine_to(K)
        return CellMorphism(a.source, b.target, {c: b.maps[c] @ a.maps[c] for c in K.cells()}, validate=False)


def identity_morphism(m: CellModule) -> CellMorphism:
    return CellMorphism(m, m, {c: la.identity(d) for c, d in m.dims.items()}, validate=False)


def submodule(m: CellModule, bases: Mapping) -> tuple:
    """Submodule spanned cellwise by the columns of ``bases``; returns ``(S, inclusion)``."""
    K = m.complex
    dims = {c: bases[c].cols for c in K.cells()}
    steps = {}
    for c in K.cells():
        if not dims[c]:
            continue
        for axis in range(K.n):
            s = K.successor(c, axis)
            if s is None or not dims[s]:
                continue
            try:
                steps[(c, axis)] = la.solve(bases[s], m.step(c, axis) @ bases[c])
            except ValueError:
                raise CommutationError(f"subspaces are not preserved by the step at {c} axis {axis}") from None
    sub = CellModule(K, dims, steps, validate=False)
    return sub, CellMorphism(sub, m, dict(bases), validate=False)


def quotient(m: CellModule, bases: Mapping) -> tuple:
    """Quotient by the cellwise subspaces ``bases``; returns ``(Q, projection)``."""
    K = m.complex
    qmaps = {c: la.quotient_map(m.dims[c], bases[c]) for c in K.cells()}
    dims = {c: q.rows for c, q in qmaps.items()}
    steps = {}
    for c in K.cells():
        if not dims[c]:
            continue
        sec = la.right_inverse(qmaps[c])
        for axis in range(K.n):
            s = K.successor(c, axis)
            if s is None or not dims[s]:
                continue
            steps[(c, axis)] = qmaps[s] @ m.step(c, axis) @ sec
    q = CellModule(K, dims, steps, validate=False)
    return q, CellMorphism(m, q, qmaps, validate=False)


def kernel(f: CellMorphism) -> tuple:
    return submodule(f.source, {c: la.kernel_basis(a) for c, a in f.maps.items()})


def image(f: CellMorphism) -> tuple:
    return submodule(f.target, {c: la.image_basis(a) for c, a in f.maps.items()})


def cokernel(f: CellMorphism) -> tuple:
    return quotient(f.target, {c: la.image_basis(a) for c, a in f.maps.items()})


# --------------------------------------------------------------------------- hom and isomorphism


def hom_space(m: CellModule, n: CellModule) -> list:
    """Basis of the natural transformations ``m -> n`` (modules on a shared complex)."""
    if m.complex != n.complex:
        raise ComplexMismatchError("hom_space needs modules on a shared complex")
    K = m.complex
    offset = {}
    nvars = 0
    for c in K.cells():
        offset[c] = nvars
        nvars += n.dims[c] * m.dims[c]

    def var(c, i, j):
        return offset[c] + i * m.dims[c] + j

    rows = []
    for c in K.cells():
        for axis in range(K.n):
            s = K.successor(c, axis)
            if s is None:
                continue
            T = n.step(c, axis).entries
            S = m.step(c, axis).entries
            for i in range(n.dims[s]):
                for j in range(m.dims[c]):
                    row = {}
                    for k in range(n.dims[c]):
                        if T[i][k]:
                            key = var(c, k, j)
                            row[key] = row.get(key, 0) + T[i][k]
                    for k in range(m.dims[s]):
                        if S[k][j]:
                            key = var(s, i, k)
                            row[key] = row.get(key, 0) - S[k][j]
                    if any(row.values()):
                        rows.append(row)
    out = []
    for vec in la.sparse_nullspace(rows, nvars):
        maps = {}
        for c in K.cells():
            r, q = n.dims[c], m.dims[c]
            base = offset[c]
            maps[c] = Matrix(r, q, tuple(tuple(vec[base + i * q + j] for j in range(q)) for i in range(r)))
        out.append(CellMorphism(m, n, maps, validate=False))
    return out


def _thin_isomorphic(a: CellModule, b: CellModule) -> bool:
    K = a.complex
    adj: dict = {}
    for c in K.cells():
        if not a.dims[c]:
            continue
        for axis in range(K.n):
            s = K.successor(c, axis)
            if s is None or not a.dims[s]:
                continue
            x, y = a.step(c, axis).entries[0][0], b.step(c, axis).entries[0][0]
            if (x == 0) != (y == 0):
                return False
            if x:
                f = la.active_field()
                ratio = f.reduce(y * f.inv(x))
                adj.setdefault(c, []).append((s, ratio))
                adj.setdefault(s, []).append((c, f.inv(ratio)))
    phi: dict = {}
    one = la.active_field().coerce(1)
    for start in adj:
        if start in phi:
            continue
        phi[start] = one
        stack = [start]
        while stack:
            u = stack.pop()
            for w, ratio in adj[u]:
                val = la.active_field().reduce(phi[u] * ratio)
                if w in phi:
                    if phi[w] != val:
                        return False
                else:
                    phi[w] = val
                    stack.append(w)
    return True


def isomorphic(m: CellModule, n: CellModule, tries: int = 4, seed: int = 0) -> bool:
    """Whether ``m ≅ n``.

    Exact for modules of cellwise dimension at most one. Otherwise a random
    element of the Hom space is tested for invertibility, which can only err
    towards ``False`` (with probability shrinking in the coefficient range).
    """
    if m.n != n.n:
        return False
    a, b = common_refinement(m, n)
    if a.dims != b.dims:
        return False
    if a.max_dim() <= 1:
        return _thin_isomorphic(a, b)
    basis = hom_space(a, b)
    if not basis:
        return a.is_zero()
    rng = random.Random(seed)
    for _ in range(tries):
        coeffs = [rng.randint(-1000, 1000) for _ in basis]
        ok = True
        for c in a.complex.cells():
            if not a.dims[c]:
                continue
            mat = la.zeros(b.dims[c], a.dims[c])
            for k, f in zip(coeffs, basis):
                mat = mat + la.scale(f.maps[c], k)
            if not la.is_invertible(mat):
                ok = False
                break
        if ok:
            return True
    return False


# --------------------------------------------------------------------------- sections


def _lim_blocks(m: CellModule, gen_cells: list, pair_cells: dict):
    total = sum(m.dims[c] for c in gen_cells)
    blocks = []
    for (i, j), cij in pair_cells.items():
        row = []
        for k, ck in enumerate(gen_cells):
            if k == i:
                row.append(m.path_map(ck, cij))
            elif k == j:
                row.append(la.scale(m.path_map(ck, cij), -1))
            else:
                row.append(la.zeros(m.dims[cij], m.dims[ck]))
        blocks.append(la.hstack(row, m.dims[cij]))
    return total, blocks


def sections(m: CellModule, u: Region) -> tuple:
    """``lim_{x in U} M_x`` as ``(dimension, basis)``.

    Computed as the equalizer of ``⊕ M_{g_i} ⇉ ⊕ M_{g_i ∨ g_j}`` over the
    generators. For open up-sets the stalks are the limits just above each
    generator, i.e. values on the cell touched from above.
    """
    if not isinstance(u, Region) or u.kind != "up":
        raise PreconditionError("sections are taken over an up-set")
    if not isinstance(u.poset, P.RnStandard) or u.dim != m.n:
        raise PreconditionError("region must be an up-set of the module's R^n")
    if u.is_empty:
        raise PreconditionError("sections over the empty region are not computed")
    K = m.complex
    fix = K.upper if u.flavor == "open" else (lambda c: tuple(c))
    gen_cells = [fix(K.locate(g)) for g in u.gens]
    pairs = {
        (i, j): fix(K.locate(P.join(u.poset, u.gens[i], u.gens[j])))
        for i, j in itertools.combinations(range(len(u.gens)), 2)
    }
    total, blocks = _lim_blocks(m, gen_cells, pairs)
    if not blocks:
        return total, la.identity(total)
    basis = la.kernel_basis(la.vstack(blocks, total))
    return basis.cols, basis


def cosections(m: CellModule, d: Region) -> int:
    """``dim colim_{x in D} M_x`` via the coequalizer over generators and meets."""
    if not isinstance(d, Region) or d.kind != "down":
        raise PreconditionError("cosections are taken over a down-set")
    if not isinstance(d.poset, P.RnStandard) or d.dim != m.n:
        raise PreconditionError("region must be a down-set of the module's R^n")
    if d.is_empty:
        raise PreconditionError("cosections over the empty region are not computed")
    K = m.complex
    fix = K.lower if d.flavor == "open" else (lambda c: tuple(c))
    gen_cells = [fix(K.locate(g)) for g in d.gens]
    meet_cells = [
        ((i, j), fix(K.locate(P.meet(d.poset, d.gens[i], d.gens[j]))))
        for i, j in itertools.combinations(range(len(d.gens)), 2)
    ]
    total = sum(m.dims[c] for c in gen_cells)
    if not meet_cells:
        return total
    cols = []
    for (i, j), cm in meet_cells:
        col = []
        for k, ck in enumerate(gen_cells):
            if k == i:
                col.append(m.path_map(cm, ck))
            elif k == j:
                col.append(la.scale(m.path_map(cm, ck), -1))
            else:
                col.append(la.zeros(m.dims[ck], m.dims[cm]))
        cols.append(la.vstack(col, m.dims[cm]))
    return total - la.rank(la.hstack(cols, total))


# --------------------------------------------------------------------------- JSON


def _mat_json(m: Matrix) -> list:
    return [[rat_str(x) for x in row] for row in m.entries]


def _mat_from_json(rows, shape) -> Matrix:
    r, c = shape
    if not rows:
        return la.zeros(r, c)
    return Matrix.from_rows([[parse_rat(x) for x in row] for row in rows], c)


def module_to_json(m: CellModule) -> dict:
    K = m.complex
    return {
        "dim": K.n,
        "breakpoints": [[rat_str(x) for x in b] for b in K.breakpoints],
        "cells": [{"index": list(c), "space": d} for c, d in sorted(m.dims.items()) if d],
        "steps": [
            {"cell": list(c), "axis": a, "matrix": _mat_json(mat)} for (c, a), mat in sorted(m.steps.items())
        ],
    }


def module_from_json(d: dict, validate: bool = True) -> CellModule:
    n = int(d["dim"])
    bps = d.get("breakpoints") or [[] for _ in range(n)]
    K = CellComplex([[parse_rat(x) for x in b] for b in bps])
    if K.n != n:
        raise DimensionError("breakpoint list length differs from dim")
    dims = {tuple(c["index"]): int(c["space"]) for c in d.get("cells", ())}
    for c in dims:
        if len(c) != n or any(not 0 <= s < k for s, k in zip(c, K.shape)):
            raise DimensionError(f"cell index {c} is outside the complex")
    steps = {}
    for box in d.get("constant_regions", ()):
        lo, hi = tuple(box["lo"]), tuple(box["hi"])
        for c in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
            for axis in range(n):
                s = K.successor(c, axis)
                if s is not None and s[axis] <= hi[axis]:
                    if dims.get(c, 0) != dims.get(s, 0):
                        raise DimensionError(f"constant region has varying dimension at {c}")
                    steps[(c, axis)] = la.identity(dims.get(c, 0))
    for st in d.get("steps", ()):
        c, axis = tuple(st["cell"]), int(st["axis"])
        s = K.successor(c, axis)
        if s is None:
            raise DimensionError(f"cell {c} has no successor along axis {axis}")
        steps[(c, axis)] = _mat_from_json(st["matrix"], (dims.get(s, 0), dims.get(c, 0)))
    return CellModule(K, dims, steps, validate=validate)


def morphism_to_json(f: CellMorphism) -> dict:
    K = f.complex
    return {
        "dim": K.n,
        "breakpoints": [[rat_str(x) for x in b] for b in K.breakpoints],
        "maps": [{"cell": list(c), "matrix": _mat_json(m)} for c, m in sorted(f.maps.items()) if m.rows and m.cols],
    }


def morphism_from_json(d: dict, source: CellModule, target: CellModule) -> CellMorphism:
    K = CellComplex([[parse_rat(x) for x in b] for b in d["breakpoints"]])
    src, tgt = source.refine_to(K), target.refine_to(K)
    maps = {}
    for e in d.get("maps", ()):
        c = tuple(e["cell"])
        maps[c] = _mat_from_json(e["matrix"], (tgt.dims[c], src.dims[c]))
    return CellMorphism(src, tgt, maps, validate=False)
