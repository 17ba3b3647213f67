"""Pointed rational cones ``C(A) = {x : A x >= 0}`` and their generators."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Sequence

from .errors import CheckFailure
from .exact import (
    adjugate,
    as_int_matrix,
    delta,
    determinant,
    gcd_of_minors,
    integral_scale,
    kernel,
    matmul,
    matvec,
    primitive,
    rank,
    submatrix,
    transpose,
)


@dataclass(frozen=True)
class Generator:
    vector: tuple
    rows: tuple  # the (n-1)-row set realising the scaling
    scale: int  # vector == scale * primitive ray
    tight: tuple  # all rows i with A_i . vector == 0


@dataclass(frozen=True)
class GeneratorSet:
    kind: str  # "primitive" | "normalized"
    generators: tuple

    @property
    def rays(self) -> list[tuple]:
        return [g.vector for g in self.generators]

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


@dataclass(frozen=True)
class Cone:
    """``C(A)`` for an integral ``A`` of full column rank."""

    A: tuple

    def __post_init__(self):
        A = as_int_matrix(self.A)
        if rank(A) < len(A[0]):
            raise ValueError("cone matrix must have full column rank (pointed cone)")
        object.__setattr__(self, "A", tuple(tuple(r) for r in A))

    @property
    def m(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return len(self.A[0])

    def contains(self, x) -> bool:
        return all(v >= 0 for v in matvec(self.A, x))

    def tight_rows(self, x) -> tuple:
        return tuple(i for i, v in enumerate(matvec(self.A, x)) if v == 0)

    def face_dim(self, x) -> int:
        """Dimension of the face of the cone having ``x`` in its relative interior."""
        T = self.tight_rows(x)
        return self.n - (rank(submatrix(self.A, T)) if T else 0)

    @cached_property
    def delta(self) -> int:
        return delta(self.A)

    @cached_property
    def primitive_rays(self) -> GeneratorSet:
        return _extreme_rays(self)

    @cached_property
    def normalized(self) -> GeneratorSet:
        return _normalized_generators(self)

    @property
    def is_full_dimensional(self) -> bool:
        rays = self.primitive_rays.rays
        return bool(rays) and rank(rays) == self.n

    @property
    def is_simplicial(self) -> bool:
        return self.m == self.n


def _ray_candidates(A, n):
    m = len(A)
    if n == 1:
        yield (), [Fraction(1)]
        return
    for I in combinations(range(m), n - 1):
        sub = submatrix(A, I)
        if rank(sub) == n - 1:
            yield I, kernel(sub)[0]


def _extreme_rays(C: Cone) -> GeneratorSet:
    A, n = C.A, C.n
    seen = {}
    for I, k in _ray_candidates(A, n):
        r = integral_scale(k)
        for cand in (r, [-x for x in r]):
            if all(v >= 0 for v in matvec(A, cand)):
                seen.setdefault(tuple(cand), I)
    gens = []
    for r in sorted(seen):
        tight = C.tight_rows(r)
        if rank(submatrix(A, tight)) != n - 1 and n > 1:
            raise CheckFailure("ray candidate is not extreme", {"A": A, "ray": r})
        gens.append(Generator(r, seen[r], 1, tight))
    return GeneratorSet("primitive", tuple(gens))


def extreme_rays(C: Cone) -> GeneratorSet:
    """Primitive generators of the extreme rays, lexicographically sorted."""
    return C.primitive_rays


def adjugate_generator(A, I: Sequence[int], j: int) -> list[int]:
    """``sign(det A_J) adj(A_J) e_n`` for ``J = I + [j]`` (row ``j`` last)."""
    J = list(I) + [j]
    AJ = submatrix(A, J)
    d = determinant(AJ)
    if d == 0:
        raise ValueError("rows I + [j] are linearly dependent")
    sgn = 1 if d > 0 else -1
    return [sgn * row[-1] for row in adjugate(AJ)]


def _normalized_generators(C: Cone) -> GeneratorSet:
    A, n = C.A, C.n
    bound = C.delta
    gens = []
    for g in C.primitive_rays:
        best, best_I = 0, None
        for I in combinations(g.tight, n - 1):
            sub = submatrix(A, I)
            if n > 1 and rank(sub) != n - 1:
                continue
            s = gcd_of_minors(sub) if n > 1 else 1
            if s > best:
                best, best_I = s, I
        r = tuple(best * x for x in g.vector)
        Ar = matvec(A, r)
        if max(abs(v) for v in Ar) > bound:
            raise CheckFailure("normalized generator violates |A r|_inf <= Delta", {"A": A, "r": r})
        j = next(i for i, v in enumerate(Ar) if v > 0)
        if tuple(adjugate_generator(A, best_I, j)) != r:
            raise CheckFailure("adjugate form disagrees with maximal-gcd scaling", {"A": A, "r": r})
        gens.append(Generator(r, best_I, best, g.tight))
    return GeneratorSet("normalized", tuple(gens))


def normalized_generators(C: Cone) -> GeneratorSet:
    """Extreme rays scaled by the largest gcd of maximal minors of n-1 tight rows."""
    return C.normalized


def _normal(rays, n):
    if n == 1:
        return [Fraction(1)]
    return kernel(rays)[0]


def triangulation_indices(C: Cone) -> list[tuple]:
    """Placing triangulation of a full-dimensional cone, as index tuples into
    ``C.primitive_rays``. Rays are placed in lexicographic order after an
    initial basis picked greedily in that order."""
    rays = C.primitive_rays.rays
    n = C.n
    if not C.is_full_dimensional:
        raise ValueError("triangulation needs a full-dimensional cone")
    start = []
    for i, r in enumerate(rays):
        if rank([rays[j] for j in start] + [r]) > len(start):
            start.append(i)
        if len(start) == n:
            break
    simplices = [tuple(start)]
    for i in range(len(rays)):
        if i in start:
            continue
        r = rays[i]
        count = {}
        for s in simplices:
            for q in s:
                tau = tuple(x for x in s if x != q)
                count.setdefault(tau, []).append(q)
        new = []
        for tau, opp in count.items():
            if len(opp) != 1:
                continue
            nu = _normal([rays[x] for x in tau], n)
            side = sum(a * b for a, b in zip(nu, rays[opp[0]]))
            val = sum(a * b for a, b in zip(nu, r))
            if side * val < 0:
                new.append(tuple(sorted(tau + (i,))))
        if not new:
            raise CheckFailure("no visible facet while placing an extreme ray", {"A": C.A})
        simplices.extend(new)
    return simplices


def simplicial_cone(rays: Sequence[Sequence[int]]) -> Cone:
    """The simplicial cone spanned by ``n`` linearly independent integer rays."""
    R = transpose([list(r) for r in rays])
    d = determinant(R)
    if d == 0:
        raise ValueError("rays are linearly dependent")
    sgn = 1 if d > 0 else -1
    return Cone([primitive([sgn * v for v in row]) for row in adjugate(R)])


def triangulate(C: Cone) -> list[Cone]:
    """Simplicial subcones with disjoint interiors covering ``C``."""
    if C.is_simplicial:
        return [C]
    rays = C.primitive_rays.rays
    return [simplicial_cone([rays[i] for i in s]) for s in triangulation_indices(C)]


def transform_cone(C: Cone, B) -> tuple[Cone, list[tuple]]:
    """Map ``R(A)`` to ``|det B| B^{-1} R(A)`` and check it equals ``R(AB)``."""
    d = determinant(B)
    if d == 0:
        raise ValueError("transformation matrix is singular")
    sgn = 1 if d > 0 else -1
    adjB = adjugate(B)
    CB = Cone(matmul(C.A, B))
    mapped = sorted(tuple(sgn * v for v in matvec(adjB, r)) for r in C.normalized.rays)
    if mapped != sorted(CB.normalized.rays):
        raise CheckFailure(
            "R(AB) != |det B| B^-1 R(A)",
            {"A": C.A, "B": B, "mapped": mapped, "direct": CB.normalized.rays},
        )
    return CB, mapped


def dual_position(C: Cone, a: Sequence[int]) -> str:
    """Locate ``-a`` relative to the dual cone: interior, boundary or outside."""
    if len(a) != C.n:
        raise ValueError(f"vector has length {len(a)}, cone lives in dimension {C.n}")
    vals = [-sum(x * y for x, y in zip(a, r)) for r in C.primitive_rays.rays]
    if any(v < 0 for v in vals):
        return "outside"
    if all(v > 0 for v in vals):
        return "interior"
    return "boundary"
