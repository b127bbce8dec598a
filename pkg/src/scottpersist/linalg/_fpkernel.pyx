# cython: boundscheck=False, wraparound=False, cdivision=True
"""Row reduction over a prime field F_p on a C buffer of 64-bit words."""
from libc.stdlib cimport malloc, free

ctypedef long long i64


cdef i64 _inv(i64 a, i64 p):
    cdef i64 t = 0, newt = 1, r = p, newr = a % p, q, tmp
    if newr < 0:
        newr += p
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref_mod(rows, int ncols, i64 p):
    """Reduced row echelon form of ``rows`` modulo ``p``.

    Returns ``(reduced_rows, pivot_columns)``; zero rows are dropped.
    """
    cdef int nrows = len(rows)
    if nrows == 0 or ncols == 0:
        return [], []
    cdef i64 *a = <i64 *> malloc(nrows * ncols * sizeof(i64))
    if a == NULL:
        raise MemoryError()
    cdef int i, j, r, c, piv_row
    cdef i64 v, f, inv
    pivots = []
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                v = row[j] % p
                if v < 0:
                    v += p
                a[i * ncols + j] = v
        r = 0
        for c in range(ncols):
            if r >= nrows:
                break
            piv_row = -1
            for i in range(r, nrows):
                if a[i * ncols + c] != 0:
                    piv_row = i
                    break
            if piv_row < 0:
                continue
            if piv_row != r:
                for j in range(ncols):
                    v = a[r * ncols + j]
                    a[r * ncols + j] = a[piv_row * ncols + j]
                    a[piv_row * ncols + j] = v
            inv = _inv(a[r * ncols + c], p)
            for j in range(c, ncols):
                a[r * ncols + j] = (a[r * ncols + j] * inv) % p
            for i in range(nrows):
                if i == r:
                    continue
                f = a[i * ncols + c]
                if f == 0:
                    continue
                for j in range(c, ncols):
                    v = (a[i * ncols + j] - f * a[r * ncols + j]) % p
                    if v < 0:
                        v += p
                    a[i * ncols + j] = v
            pivots.append(c)
            r += 1
        out = [[a[i * ncols + j] for j in range(ncols)] for i in range(r)]
    finally:
        free(a)
    return out, pivots
