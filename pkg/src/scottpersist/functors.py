"""Lower/upper limits of cell modules and the functors built from their canonical maps."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Union

from . import linalg as la
from . import poset as P
from .cellmod import CellModule, CellMorphism, cokernel, image, kernel, quotient
from .errors import CommutationError, DimensionError, PreconditionError
from .linalg import Matrix
from .regions import AnyRegion, ConvexRegion, Region, closure, interior, interior_down


class PosetModule:
    """A module over a finite poset: one dimension per element and a matrix per Hasse edge."""

    def __init__(self, poset: P.FinitePoset, dims, edges: Mapping | None = None, validate: bool = True):
        self.poset = poset
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != poset.size:
            raise DimensionError("one dimension per poset element is required")
        self.edges = {}
        for i, j in poset.hasse:
            m = (edges or {}).get((i, j))
            shape = (self.dims[j], self.dims[i])
            if m is None:
                m = la.zeros(*shape)
            elif m.shape != shape:
                raise DimensionError(f"edge {(i, j)} has shape {m.shape}, expected {shape}")
            self.edges[(i, j)] = m
        self._from = {}
        if validate:
            for s in range(poset.size):
                self._maps_from(s)

    def _maps_from(self, s: int) -> dict:
        """``M(s <= t)`` for every ``t >= s``, checking that all paths agree."""
        if s in self._from:
            return self._from[s]
        out = {s: la.identity(self.dims[s])}
        order = [t for t in _topological(self.poset) if self.poset.reach[s][t]]
        for t in order:
            if t == s:
                continue
            for i, j in self.poset.hasse:
                if j == t and i in out:
                    cand = self.edges[(i, j)] @ out[i]
                    if t in out and out[t] != cand:
                        raise CommutationError(f"paths from {s} to {t} give different maps")
                    out[t] = cand
        self._from[s] = out
        return out

    def eval_map(self, i: int, j: int) -> Matrix:
        if not self.poset.reach[i][j]:
            raise PreconditionError(f"{i} is not below {j}")
        return self._maps_from(i)[j]

    def is_zero(self) -> bool:
        return not any(self.dims)


def _topological(po: P.FinitePoset) -> list:
    indeg = [0] * po.size
    for _, j in po.hasse:
        indeg[j] += 1
    ready = [i for i in range(po.size) if not indeg[i]]
    out = []
    while ready:
        u = ready.pop(0)
        out.append(u)
        for i, j in po.hasse:
            if i == u:
                indeg[j] -= 1
                if not indeg[j]:
                    ready.append(j)
    return out


AnyModule = Union[CellModule, PosetModule]


@dataclass(frozen=True)
class FunctorReport:
    output: AnyModule
    morphism: Optional[object] = None

    @property
    def is_zero(self) -> bool:
        return self.output.is_zero()


def _identity_report(m: PosetModule) -> FunctorReport:
    return FunctorReport(m, "identity")


def _relabel(m: CellModule, target) -> CellModule:
    K = m.complex
    dims = {c: m.dims[target(c)] for c in K.cells()}
    steps = {}
    for c in K.cells():
        if not dims[c]:
            continue
        tc = target(c)
        for axis in range(K.n):
            s = K.successor(c, axis)
            if s is not None and dims[s]:
                steps[(c, axis)] = m.path_map(tc, target(s))
    return CellModule(K, dims, steps, validate=True)


def overline(m: AnyModule) -> FunctorReport:
    """Pointwise colimit over the elements way below; canonical map ``⎺M -> M``."""
    if isinstance(m, PosetModule):
        return _identity_report(m)
    K = m.complex
    out = _relabel(m, K.lower)
    f = CellMorphism(out, m, {c: m.path_map(K.lower(c), c) for c in K.cells()}, validate=False)
    return FunctorReport(out, f)


def underline(m: AnyModule) -> FunctorReport:
    """Pointwise limit over the elements way above; canonical map ``M -> M̲``."""
    if isinstance(m, PosetModule):
        return _identity_report(m)
    K = m.complex
    out = _relabel(m, K.upper)
    f = CellMorphism(m, out, {c: m.path_map(c, K.upper(c)) for c in K.cells()}, validate=False)
    return FunctorReport(out, f)


def _zero_like(m: PosetModule) -> FunctorReport:
    return FunctorReport(PosetModule(m.poset, [0] * m.poset.size, {}, validate=False))


def scott_socle(m: AnyModule) -> FunctorReport:
    """Kernel of ``M -> M̲``, with its inclusion into ``M``."""
    if isinstance(m, PosetModule):
        return _zero_like(m)
    sub, inc = kernel(underline(m).morphism)
    sub.check_commutation()
    return FunctorReport(sub, inc)


def scott_radical(m: AnyModule) -> FunctorReport:
    """Image of ``⎺M -> M``, with its inclusion into ``M``."""
    if isinstance(m, PosetModule):
        return _identity_report(m)
    sub, inc = image(overline(m).morphism)
    sub.check_commutation()
    return FunctorReport(sub, inc)


def scott_top(m: AnyModule) -> FunctorReport:
    """``M`` modulo its radical, with the projection from ``M``."""
    if isinstance(m, PosetModule):
        return _zero_like(m)
    f = overline(m).morphism
    q, proj = quotient(m, {c: la.image_basis(a) for c, a in f.maps.items()})
    q.check_commutation()
    return FunctorReport(q, proj)


def r1_socle(m: AnyModule) -> AnyModule:
    """Cokernel of ``M -> M̲``."""
    if isinstance(m, PosetModule):
        return _zero_like(m).output
    q, _ = cokernel(underline(m).morphism)
    q.check_commutation()
    return q


def l1_top(m: AnyModule) -> AnyModule:
    """Kernel of ``⎺M -> M``."""
    if isinstance(m, PosetModule):
        return _zero_like(m).output
    sub, _ = kernel(overline(m).morphism)
    sub.check_commutation()
    return sub


def is_ephemeral(m: AnyModule) -> bool:
    """Every map between way-below comparable points vanishes, i.e. ``⎺M = 0``."""
    if isinstance(m, PosetModule):
        return m.is_zero()
    K = m.complex
    return not any(m.dims[c] for c in K.cells() if all(s % 2 == 0 for s in c))


def is_upper_semicontinuous(m: AnyModule) -> bool:
    if isinstance(m, PosetModule):
        return True
    return underline(m).morphism.is_iso()


def is_lower_semicontinuous(m: AnyModule) -> bool:
    if isinstance(m, PosetModule):
        return True
    return overline(m).morphism.is_iso()


def jstar_representative(m: AnyModule) -> AnyModule:
    """The lower semi-continuous representative ``⎺M`` of the sheaf class of ``M``."""
    return overline(m).output


FUNCTORS = ("overline", "underline", "soc", "rad", "top", "r1soc", "l1top")


def apply_functor(name: str, m: AnyModule) -> AnyModule:
    table = {
        "overline": lambda x: overline(x).output,
        "underline": lambda x: underline(x).output,
        "soc": lambda x: scott_socle(x).output,
        "rad": lambda x: scott_radical(x).output,
        "top": lambda x: scott_top(x).output,
        "r1soc": r1_socle,
        "l1top": l1_top,
        "jstar": jstar_representative,
    }
    if name not in table:
        raise KeyError(name)
    return table[name](m)


def indicator_closed_form(r: Region, name: str) -> Optional[AnyRegion]:
    """Region whose indicator is ``name`` applied to ``k[r]``; ``None`` means zero.

    Works at the level of regions only, so it doubles as an independent check
    of the cell-level functors on staircases in R^n.
    """
    if not isinstance(r.poset, P.RnStandard):
        raise PreconditionError("closed forms are stated for the standard order on R^n")
    if r.kind == "up":
        cl, op = closure(r), interior(r)
        forms = {
            "overline": op,
            "underline": cl,
            "rad": op,
            "soc": None,
            "top": ConvexRegion(r, op),
            "r1soc": ConvexRegion(cl, r),
            "l1top": None,
        }
    else:
        cl, op = closure(r), interior_down(r)
        forms = {
            "overline": cl,
            "underline": op,
            "rad": r,
            "soc": ConvexRegion(r, op),
            "top": None,
            "r1soc": None,
            "l1top": ConvexRegion(cl, r),
        }
    return forms[name]


def poset_module_to_json(m: PosetModule) -> dict:
    from .cellmod import _mat_json

    return {
        "poset": P.poset_to_json(m.poset),
        "dims": list(m.dims),
        "edges": [{"from": i, "to": j, "matrix": _mat_json(a)} for (i, j), a in sorted(m.edges.items()) if a.rows and a.cols],
    }


def poset_module_from_json(d: dict) -> PosetModule:
    from .cellmod import _mat_from_json

    po = P.poset_from_json(d["poset"])
    if not isinstance(po, P.FinitePoset):
        raise PreconditionError("poset modules are defined over finite posets")
    dims = [int(x) for x in d["dims"]]
    edges = {}
    for e in d.get("edges", ()):
        i, j = int(e["from"]), int(e["to"])
        edges[(i, j)] = _mat_from_json(e["matrix"], (dims[j], dims[i]))
    return PosetModule(po, dims, edges)
