"""Dense exact matrices and the elimination routines built on them.

Entries live in the active coefficient field (see :mod:`.fields`): Fractions
for the rational field, reduced ints for F_p. Rational elimination runs in
Python; F_p elimination goes through the (optionally compiled) kernel.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from ..errors import DimensionError
from . import _backend
from .fields import RationalField, active_field


class Matrix:
    """Immutable ``rows x cols`` matrix; ``entries`` is a tuple of row tuples."""

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: tuple):
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self._hash = None

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], cols: int | None = None) -> "Matrix":
        coerce = active_field().coerce
        data = tuple(tuple(coerce(x) for x in row) for row in rows)
        if cols is None:
            if not data:
                raise DimensionError("cannot infer column count of an empty matrix")
            cols = len(data[0])
        if any(len(r) != cols for r in data):
            raise DimensionError("ragged rows")
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        if not columns:
            return zeros(rows, 0)
        return cls.from_rows(zip(*columns), len(columns)) if rows else zeros(0, len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def T(self) -> "Matrix":
        if self.rows == 0:
            return Matrix(self.cols, 0, tuple(() for _ in range(self.cols)))
        return Matrix(self.cols, self.rows, tuple(zip(*self.entries)))

    def columns(self) -> list[tuple]:
        return list(self.T.entries)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def tolist(self) -> list[list]:
        return [list(r) for r in self.entries]

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return matmul(self, other)

    def __add__(self, other: "Matrix") -> "Matrix":
        return add(self, other)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return add(self, scale(other, -1))

    def __neg__(self) -> "Matrix":
        return scale(self, -1)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.entries)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


_zeros: dict = {}


def zeros(rows: int, cols: int) -> Matrix:
    f = active_field()
    key = (f, rows, cols)
    hit = _zeros.get(key)
    if hit is None:
        z = f.coerce(0)
        hit = Matrix(rows, cols, tuple((z,) * cols for _ in range(rows)))
        if rows * cols <= 4096:
            _zeros[key] = hit
    return hit


_identities: dict = {}


def identity(n: int) -> Matrix:
    f = active_field()
    key = (f, n)
    hit = _identities.get(key)
    if hit is None:
        z, o = f.coerce(0), f.coerce(1)
        hit = Matrix(n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))
        _identities[key] = hit
    return hit


def scalar(c, n: int) -> Matrix:
    f = active_field()
    c, z = f.coerce(c), f.coerce(0)
    return Matrix(n, n, tuple(tuple(c if i == j else z for j in range(n)) for i in range(n)))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows:
        raise DimensionError(f"cannot compose {a.shape} with {b.shape}")
    field = active_field()
    if a.rows == 0 or b.cols == 0 or a.cols == 0:
        return zeros(a.rows, b.cols)
    if a is _zeros.get((field, a.rows, a.cols)) or b is _zeros.get((field, b.rows, b.cols)):
        return zeros(a.rows, b.cols)
    zero = field.coerce(0)
    if a is _identities.get((field, a.rows)):
        return b
    if b is _identities.get((field, b.rows)):
        return a
    if a.rows == a.cols == b.cols == 1:
        x = a.entries[0][0] * b.entries[0][0]
        return Matrix(1, 1, ((x if field.prime is None else x % field.prime,),))
    bt = tuple(zip(*b.entries))
    if field.prime is None:
        data = tuple(
            tuple(sum((x * y for x, y in zip(row, col) if x and y), zero) for col in bt)
            for row in a.entries
        )
    else:
        p = field.prime
        data = tuple(tuple(sum(x * y for x, y in zip(row, col)) % p for col in bt) for row in a.entries)
    return Matrix(a.rows, b.cols, data)


def compose(a: Matrix, b: Matrix) -> Matrix:
    """The composite ``a ∘ b`` (apply ``b`` first)."""
    return matmul(a, b)


def add(a: Matrix, b: Matrix) -> Matrix:
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")
    red = active_field().reduce
    return Matrix(
        a.rows, a.cols, tuple(tuple(red(x + y) for x, y in zip(r, s)) for r, s in zip(a.entries, b.entries))
    )


def scale(a: Matrix, c) -> Matrix:
    f = active_field()
    c = f.coerce(c)
    return Matrix(a.rows, a.cols, tuple(tuple(f.reduce(c * x) for x in r) for r in a.entries))


def hstack(mats: Sequence[Matrix], rows: int | None = None) -> Matrix:
    if not mats:
        return zeros(rows or 0, 0)
    r = mats[0].rows
    if any(m.rows != r for m in mats):
        raise DimensionError("hstack row mismatch")
    cols = sum(m.cols for m in mats)
    return Matrix(r, cols, tuple(tuple(x for m in mats for x in m.entries[i]) for i in range(r)))


def vstack(mats: Sequence[Matrix], cols: int | None = None) -> Matrix:
    if not mats:
        return zeros(0, cols or 0)
    c = mats[0].cols
    if any(m.cols != c for m in mats):
        raise DimensionError("vstack column mismatch")
    return Matrix(sum(m.rows for m in mats), c, tuple(r for m in mats for r in m.entries))


def block_diag(mats: Sequence[Matrix]) -> Matrix:
    zero = active_field().coerce(0)
    cols = sum(m.cols for m in mats)
    out = []
    offset = 0
    for m in mats:
        for r in m.entries:
            out.append((zero,) * offset + r + (zero,) * (cols - offset - m.cols))
        offset += m.cols
    return Matrix(len(out), cols, tuple(out))


def _rref_rational(rows: list[list], ncols: int):
    a = [list(r) for r in rows]
    n = len(a)
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= n:
            break
        piv = next((i for i in range(r, n) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        pv = pr[c]
        if pv != 1:
            for j in range(c, ncols):
                if pr[j]:
                    pr[j] = pr[j] / pv
        nz = [j for j in range(c, ncols) if pr[j]]
        for i in range(n):
            if i == r:
                continue
            ri = a[i]
            f = ri[c]
            if f:
                for j in nz:
                    ri[j] = ri[j] - f * pr[j]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rref(a: Matrix) -> tuple[list[list], list[int]]:
    """Nonzero rows of the reduced row echelon form and the pivot columns."""
    field = active_field()
    if a.rows == 0 or a.cols == 0:
        return [], []
    if field.prime is None:
        return _rref_rational(a.entries, a.cols)
    return _backend.rref_mod([list(r) for r in a.entries], a.cols, field.prime)


def _bareiss_rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    # scale each row to integers, then fraction-free elimination
    a = []
    for row in rows:
        m = lcm(*(Fraction(x).denominator for x in row)) if row else 1
        ints = [int(Fraction(x) * m) for x in row]
        if any(ints):
            a.append(ints)
    n = len(a)
    r = 0
    prev = 1
    for c in range(ncols):
        if r >= n:
            break
        piv = next((i for i in range(r, n) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, n):
            ai = a[i]
            f = ai[c]
            for j in range(c, ncols):
                ai[j] = (p * ai[j] - f * a[r][j]) // prev
        prev = p
        r += 1
    return r


def rank(a: Matrix) -> int:
    if a.rows == 0 or a.cols == 0:
        return 0
    if isinstance(active_field(), RationalField):
        return _bareiss_rank(a.entries, a.cols)
    return len(rref(a)[1])


def kernel_basis(a: Matrix) -> Matrix:
    """Columns form a basis of ``{x : a x = 0}``."""
    f = active_field()
    zero, one = f.coerce(0), f.coerce(1)
    if a.rows == 0:
        return identity(a.cols)
    rows, pivots = rref(a)
    pivset = set(pivots)
    free = [j for j in range(a.cols) if j not in pivset]
    cols = []
    for fc in free:
        v = [zero] * a.cols
        v[fc] = one
        for row, pc in zip(rows, pivots):
            if row[fc]:
                v[pc] = f.reduce(-row[fc])
        cols.append(v)
    return Matrix.from_columns(cols, a.cols) if cols else zeros(a.cols, 0)


def image_basis(a: Matrix) -> Matrix:
    """Independent columns of ``a`` spanning its column space."""
    if a.cols == 0 or a.rows == 0:
        return zeros(a.rows, 0)
    _, pivots = rref(a)
    if not pivots:
        return zeros(a.rows, 0)
    return Matrix(a.rows, len(pivots), tuple(tuple(r[j] for j in pivots) for r in a.entries))


def annihilator(basis: Matrix) -> Matrix:
    """Rows span the linear forms vanishing on the column span of ``basis``."""
    return kernel_basis(basis.T).T


def subspace_intersection(bases: Sequence[Matrix], dim: int | None = None) -> Matrix:
    """Basis (as columns) of the intersection of the column spans."""
    if not bases:
        if dim is None:
            raise DimensionError("ambient dimension needed for an empty intersection")
        return identity(dim)
    d = bases[0].rows
    if any(b.rows != d for b in bases):
        raise DimensionError("subspaces live in different ambient spaces")
    return kernel_basis(vstack([annihilator(b) for b in bases], d))


def quotient_map(dim: int, basis: Matrix) -> Matrix:
    """A surjection ``k^dim -> k^(dim - r)`` whose kernel is the span of ``basis``."""
    if basis.rows != dim:
        raise DimensionError("subspace basis does not live in k^dim")
    if basis.cols == 0:
        return identity(dim)
    return annihilator(basis)


def solve(a: Matrix, b: Matrix) -> Matrix:
    """Some ``x`` with ``a x = b``; free variables are set to zero."""
    if a.rows != b.rows:
        raise DimensionError("right-hand side has the wrong number of rows")
    f = active_field()
    zero = f.coerce(0)
    if a.rows == 0:
        return zeros(a.cols, b.cols)
    aug = hstack([a, b])
    rows, pivots = rref(aug)
    if any(p >= a.cols for p in pivots):
        raise ValueError("linear system is inconsistent")
    x = [[zero] * b.cols for _ in range(a.cols)]
    for row, pc in zip(rows, pivots):
        x[pc] = list(row[a.cols:])
    return Matrix(a.cols, b.cols, tuple(tuple(r) for r in x))


def right_inverse(q: Matrix) -> Matrix:
    """``s`` with ``q s = I`` for a surjective ``q``."""
    return solve(q, identity(q.rows))


def is_invertible(a: Matrix) -> bool:
    return a.rows == a.cols and rank(a) == a.rows


def inverse(a: Matrix) -> Matrix:
    if not is_invertible(a):
        raise ValueError("matrix is singular")
    return solve(a, identity(a.rows))


def same_column_space(a: Matrix, b: Matrix) -> bool:
    if a.rows != b.rows:
        return False
    r = rank(a)
    return r == rank(b) and r == rank(hstack([a, b]))


def contains_columns(space: Matrix, vectors: Matrix) -> bool:
    """Whether every column of ``vectors`` lies in the column span of ``space``."""
    return rank(space) == rank(hstack([space, vectors]))
