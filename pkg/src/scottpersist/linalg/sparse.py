"""Sparse elimination for large, loosely coupled linear systems.

Rows are dicts ``{variable index: coefficient}`` over the active field. Used
for naturality systems (Hom spaces) and for brute-force limit oracles.
"""
from __future__ import annotations

from typing import Iterable

from .fields import active_field


class _Reducer:
    def __init__(self):
        self.field = active_field()
        self.pivots: dict[int, dict] = {}
        self.occurs: dict[int, set] = {}

    def add(self, row: dict) -> bool:
        f = self.field
        row = {k: f.coerce(v) for k, v in row.items() if v}
        for var in [v for v in row if v in self.pivots]:
            c = row.get(var)
            if not c:
                continue
            for k, pv in self.pivots[var].items():
                nv = f.reduce(row.get(k, 0) - c * pv)
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        if not row:
            return False
        # pivot on the variable that occurs least in existing pivot rows
        var = min(row, key=lambda k: (len(self.occurs.get(k, ())), k))
        inv = f.inv(row[var])
        row = {k: f.reduce(v * inv) for k, v in row.items()}
        for pv_var in list(self.occurs.get(var, ())):
            prow = self.pivots[pv_var]
            c = prow[var]
            for k, v in row.items():
                nv = f.reduce(prow.get(k, 0) - c * v)
                if nv:
                    if k not in prow:
                        self.occurs.setdefault(k, set()).add(pv_var)
                    prow[k] = nv
                else:
                    if k in prow:
                        del prow[k]
                        self.occurs[k].discard(pv_var)
        self.pivots[var] = row
        for k in row:
            if k != var:
                self.occurs.setdefault(k, set()).add(var)
        return True


def sparse_rank(rows: Iterable[dict]) -> int:
    red = _Reducer()
    return sum(1 for r in rows if red.add(r))


def sparse_nullspace(rows: Iterable[dict], nvars: int) -> list[list]:
    """Basis vectors (dense lists) of the solution space of ``rows · x = 0``."""
    red = _Reducer()
    for r in rows:
        red.add(r)
    f = red.field
    zero, one = f.coerce(0), f.coerce(1)
    free = [v for v in range(nvars) if v not in red.pivots]
    basis = []
    for fv in free:
        x = [zero] * nvars
        x[fv] = one
        for pv, row in red.pivots.items():
            c = row.get(fv)
            if c:
                x[pv] = f.reduce(-c)
        basis.append(x)
    return basis
