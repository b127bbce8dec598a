"""Pure-Python twin of the compiled F_p row-reduction kernel."""


def rref_mod(rows, ncols, p):
    """Reduced row echelon form of ``rows`` modulo ``p``.

    Returns ``(reduced_rows, pivot_columns)``; zero rows are dropped.
    """
    a = [[x % p for x in row] for row in rows]
    nrows = len(a)
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        pr = a[r]
        for j in range(c, ncols):
            pr[j] = pr[j] * inv % p
        for i in range(nrows):
            if i == r:
                continue
            f = a[i][c]
            if f:
                ri = a[i]
                for j in range(c, ncols):
                    ri[j] = (ri[j] - f * pr[j]) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots
