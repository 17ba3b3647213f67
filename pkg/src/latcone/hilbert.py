"""Hilbert bases of pointed cones with respect to ``Z^n`` or a rational lattice.

Candidates come from the half-open fundamental parallelepipeds of a placing
triangulation (plus the primitive ray generators). A candidate ``h`` is
reducible exactly when some other nonzero candidate ``k`` has ``A k <= A h``
componentwise, so the basis is the set of minimal candidates under that order.
Every survivor is then confirmed independently with the spindle test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Optional, Sequence

from .cones import Cone, GeneratorSet, triangulation_indices
from .errors import CheckFailure
from .exact import matmul, matvec, rat_inverse, smith_normal_form, transpose
from .lp import Polytope, integer_points, optimize


@dataclass(frozen=True)
class HilbertElement:
    vector: tuple
    trivial: bool
    face_dim: int


def spindle(C: Cone, y: Sequence) -> Polytope:
    """``S(y) = {x : 0 <= A x <= A y}``."""
    Ay = matvec(C.A, [Fraction(v) for v in y])
    if any(v < 0 for v in Ay):
        raise ValueError("point is not in the cone")
    rows = [list(r) for r in C.A] + [[-v for v in r] for r in C.A]
    return Polytope(rows, Ay + [0] * C.m)


def _coords(basis, x):
    """Coordinates of ``x`` in the lattice basis, or raise if not a member."""
    if basis is None:
        z = [Fraction(v) for v in x]
    else:
        z = matvec(rat_inverse(basis), [Fraction(v) for v in x])
    if any(v.denominator != 1 for v in z):
        raise ValueError(f"{tuple(x)} is not in the lattice")
    return [int(v) for v in z]


def _lattice_cone(C: Cone, basis) -> Cone:
    """``C(A B)`` with rows scaled to be integral."""
    if basis is None:
        return C
    rows = []
    for r in matmul([list(map(Fraction, row)) for row in C.A], basis):
        den = 1
        for v in r:
            den = den * v.denominator // _gcd(den, v.denominator)
        rows.append([int(v * den) for v in r])
    return Cone(rows)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def is_hilbert_element(C: Cone, h: Sequence, basis=None) -> bool:
    """Spindle test: ``h`` is irreducible iff ``S(h)`` meets the lattice only in 0 and h."""
    if not C.contains(h):
        raise ValueError(f"{tuple(h)} is not in the cone")
    z = _coords(basis, h)
    if not any(z):
        raise ValueError("the zero vector is not a Hilbert basis candidate")
    CB = _lattice_cone(C, basis)
    # A has full column rank, so the spindle is bounded
    pts = integer_points(spindle(CB, z), assume_bounded=True)
    return pts == sorted([tuple([0] * C.n), tuple(z)])


def parallelepiped_points(rays: Sequence[Sequence[int]]) -> list[tuple]:
    """Integer points ``R lam`` with ``lam in [0, 1)^n`` for independent integer rays.

    Representatives of ``Z^n / R Z^n`` are read off the Smith form of ``R`` and
    reduced into the half-open parallelepiped.
    """
    R = transpose([list(r) for r in rays])
    n = len(R)
    D, U, _ = smith_normal_form(R)
    diag = [D[i][i] for i in range(n)]
    if any(d == 0 for d in diag):
        raise ValueError("rays are linearly dependent")
    Uinv = [[int(v) for v in row] for row in rat_inverse(U)]
    W = matmul(rat_inverse(R), Uinv)
    out = []
    k = [0] * n
    while True:
        lam = matvec(W, k)
        frac = [v - floor(v) for v in lam]
        out.append(tuple(int(v) for v in matvec(R, frac)))
        i = 0
        while i < n:
            k[i] += 1
            if k[i] < diag[i]:
                break
            k[i] = 0
            i += 1
        if i == n:
            break
    return sorted(out)


def _candidates(C: Cone) -> set:
    rays = C.primitive_rays.rays
    cands = set(rays)
    simplices = [tuple(range(len(rays)))] if len(rays) == C.n else triangulation_indices(C)
    for s in simplices:
        cands.update(parallelepiped_points([rays[i] for i in s]))
    cands.discard(tuple([0] * C.n))
    return cands


def _zn_basis(C: Cone, verify: bool) -> list[tuple]:
    if not C.is_full_dimensional:
        raise ValueError("Hilbert basis computation needs a full-dimensional pointed cone")
    A = C.A
    keyed = sorted((sum(Ax), Ax, x) for x in _candidates(C) for Ax in [tuple(matvec(A, x))])
    minimal = []
    for _, Ax, x in keyed:
        if not any(all(a <= b for a, b in zip(Ak, Ax)) for Ak, _ in minimal):
            minimal.append((Ax, x))
    found = sorted(x for _, x in minimal)
    if verify:
        for x in found:
            if not is_hilbert_element(C, x):
                raise CheckFailure("spindle test rejects a minimal candidate", {"A": A, "h": x})
    return found


def hilbert_basis(C: Cone, basis=None, verify: bool = True) -> list[HilbertElement]:
    """Hilbert basis of ``C`` with respect to ``basis Z^n`` (``Z^n`` if None).

    Requires a full-dimensional cone. With ``verify`` every element is
    re-checked with the spindle test.
    """
    CB = _lattice_cone(C, basis)
    zs = _zn_basis(CB, verify)
    out = []
    for z in zs:
        x = tuple(z) if basis is None else tuple(matvec(basis, [Fraction(v) for v in z]))
        dim = C.face_dim(x)
        out.append(HilbertElement(x, dim == 1, dim))
    return sorted(out, key=lambda e: e.vector)


def height(C: Cone, h: Sequence, generators) -> tuple[Fraction, tuple]:
    """Minimal coefficient sum expressing ``h`` as a nonnegative combination.

    ``generators`` is a :class:`GeneratorSet` or a list of vectors. Returns
    ``(value, lambda)`` for an optimal ``lambda``.
    """
    vecs = generators.rays if isinstance(generators, GeneratorSet) else [tuple(g) for g in generators]
    h = h.vector if isinstance(h, HilbertElement) else tuple(h)
    t, n = len(vecs), len(h)
    cols = transpose([list(v) for v in vecs]) if vecs else [[] for _ in range(n)]
    rows, rhs = [], []
    for i in range(n):
        rows.append([Fraction(v) for v in cols[i]])
        rhs.append(Fraction(h[i]))
        rows.append([-Fraction(v) for v in cols[i]])
        rhs.append(-Fraction(h[i]))
    for j in range(t):
        e = [Fraction(0)] * t
        e[j] = Fraction(-1)
        rows.append(e)
        rhs.append(Fraction(0))
    out = optimize(Polytope.from_rational(rows, rhs), [1] * t, "min")
    if out.status != "optimal":
        raise CheckFailure("point is not a nonnegative combination of the generators",
                           {"h": h, "generators": vecs})
    return out.value, out.point


def hilbert_height(C: Cone, elements: Optional[list] = None, generators=None) -> Fraction:
    """Height of the Hilbert basis (maximum over its elements) w.r.t. ``R(A)`` by default."""
    elements = hilbert_basis(C) if elements is None else elements
    generators = C.normalized if generators is None else generators
    return max((height(C, e, generators)[0] for e in elements), default=Fraction(0))
