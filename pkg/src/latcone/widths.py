"""Directional, facet and (radius-limited) lattice width of bounded polytopes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from .errors import CheckFailure
from .exact import delta, primitive, rank, vec_gcd
from .lp import Polytope, UnboundedError, optimize, vertices


@dataclass(frozen=True)
class WidthReport:
    width: Fraction
    direction: tuple
    mode: str  # "facet" | "directional" | "lattice_radius"
    exhaustive: bool
    radius: Optional[int] = None
    note: str = ""


def width_in_direction(P: Polytope, z: Sequence[int]) -> Fraction:
    """``max z.x - min z.x`` over ``P``."""
    if not any(z):
        raise ValueError("direction must be nonzero")
    hi = optimize(P, z, "max")
    lo = optimize(P, z, "min")
    if hi.status == "infeasible":
        raise ValueError("polytope is empty")
    if hi.status != "optimal" or lo.status != "optimal":
        raise UnboundedError(f"polytope is unbounded in direction {tuple(z)}")
    return hi.value - lo.value


def face_dimension(P: Polytope, rows: Sequence[int]) -> int:
    """Affine dimension of ``{x in P : A_i x = b_i for i in rows}`` (-1 if empty)."""
    F = P.intersect([[-v for v in P.A[i]] for i in rows], [-P.b[i] for i in rows])
    if optimize(F, [0] * P.n).status == "infeasible":
        return -1
    eq = []
    for k in range(P.m):
        out = optimize(F, P.A[k], "min")
        if out.status == "optimal" and out.value == P.b[k]:
            eq.append(P.A[k])
    return P.n - (rank(eq) if eq else 0)


def facet_rows(P: Polytope) -> list[int]:
    """Indices of rows whose face has affine dimension ``n - 1``."""
    return [i for i in range(P.m) if face_dimension(P, [i]) == P.n - 1]


def facet_width(P: Polytope) -> WidthReport:
    """Minimum width over the facet-defining row normals."""
    rows = facet_rows(P)
    if not rows:
        raise ValueError("polytope has no facets (empty or not full-dimensional)")
    best = None
    for i in rows:
        w = width_in_direction(P, P.A[i])
        if best is None or w < best[0]:
            best = (w, tuple(P.A[i]))
    return WidthReport(best[0], best[1], "facet", True)


def _canonical_directions(n: int, radius: int):
    for z in product(range(-radius, radius + 1), repeat=n):
        first = next((v for v in z if v), 0)
        if first > 0:
            yield z


def lattice_width(P: Polytope, radius: int = 3) -> WidthReport:
    """Smallest width over integer directions with ``|z|_inf <= radius``.

    Antipodal directions are identified (first nonzero entry positive) and ties
    go to the lexicographically smallest representative. The value is an upper
    bound on the lattice width, certified only within the radius.
    """
    if radius < 1:
        raise ValueError("radius must be at least 1")
    verts = vertices(P)
    if not verts:
        raise ValueError("polytope is empty or has no vertices")
    # the vertex hull equals P only when P is bounded
    for i in range(P.n):
        e = [0] * P.n
        e[i] = 1
        if optimize(P, e, "max").status != "optimal" or optimize(P, e, "min").status != "optimal":
            raise UnboundedError("polyhedron is unbounded")
    den = 1
    for v in verts:
        for x in v:
            den = den * x.denominator // _gcd(den, x.denominator)
    iv = [[int(x * den) for x in v] for v in verts]
    best = None
    for z in _canonical_directions(P.n, radius):
        vals = [sum(a * b for a, b in zip(z, v)) for v in iv]
        w = max(vals) - min(vals)
        if best is None or w < best[0]:
            best = (w, z)
    w = Fraction(best[0], den)
    if width_in_direction(P, best[1]) != w:
        raise CheckFailure("vertex-based width disagrees with the LP width", {"A": P.A, "b": P.b})
    return WidthReport(w, best[1], "lattice_radius", False, radius,
                       note=f"upper bound on the lattice width; exhaustive only for |z|_inf <= {radius}")


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class WidthRelation:
    lattice: WidthReport
    facet: WidthReport
    delta: int

    @property
    def chain_ok(self) -> bool:
        w, wf = self.lattice.width, self.facet.width
        return w <= wf <= self.delta * w

    @property
    def equal_when_unimodular(self) -> bool:
        return self.delta != 1 or self.lattice.width == self.facet.width


def width_relation_report(P: Polytope, radius: int = 3) -> WidthRelation:
    """Check ``w <= w^F <= Delta w`` and ``w = w^F`` when ``Delta = 1``."""
    rel = WidthRelation(lattice_width(P, radius), facet_width(P), delta(P.A))
    if not rel.chain_ok:
        raise CheckFailure("width chain w <= w^F <= Delta w violated",
                           {"A": P.A, "b": P.b, "w": rel.lattice.width, "wF": rel.facet.width})
    if not rel.equal_when_unimodular:
        raise CheckFailure("Delta = 1 but w != w^F", {"A": P.A, "b": P.b})
    return rel


def primitive_direction(z) -> tuple:
    return tuple(primitive(z)) if vec_gcd(z) else tuple(z)
