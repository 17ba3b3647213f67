"""The right-hand-side lattice of an integer matrix and finite abelian groups.

Diameters are available two ways: the closed formula over invariant factors
and a breadth-first search straight from the definition. They are kept apart
on purpose; see :func:`diameter`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .errors import CheckFailure
from .exact import (
    determinant,
    gcd_of_minors,
    hermite_normal_form,
    matmul,
    rank,
    rat_inverse,
    smith_normal_form,
    transpose,
)

BFS_ORDER_LIMIT = 16


@dataclass(frozen=True)
class RhsLattice:
    """``{x : A x integral}``; basis vectors are the columns of ``basis``."""

    basis: tuple
    det: Fraction

    @property
    def n(self) -> int:
        return len(self.basis)

    def basis_matrix(self) -> list[list[Fraction]]:
        return [list(r) for r in self.basis]


def rhs_lattice(A: Sequence[Sequence[int]]) -> RhsLattice:
    """Basis of the lattice of points with integral image under ``A``.

    The row lattice ``A^T Z^m`` is put in Hermite form and dualised.
    """
    n = len(A[0])
    if rank(A) < n:
        raise ValueError("matrix must have full column rank")
    H, _ = hermite_normal_form(transpose(A))
    L = [row[:n] for row in H]
    B = transpose(rat_inverse(L))
    det = Fraction(1, abs(determinant(L)))
    g = gcd_of_minors(A)
    if det * g != 1:
        raise CheckFailure("det of the rhs lattice differs from 1/gcd(A)", {"A": A})
    if any(v.denominator != 1 for row in matmul(A, B) for v in row):
        raise CheckFailure("A B is not integral", {"A": A})
    return RhsLattice(tuple(tuple(r) for r in B), det)


@dataclass(frozen=True)
class AbelianGroup:
    """``Z/s_1 + ... + Z/s_N`` with ``s_1 | s_2 | ... | s_N`` and ``s_i >= 2``."""

    invariant_factors: tuple = ()

    def __post_init__(self):
        s = tuple(int(v) for v in self.invariant_factors)
        if any(v < 2 for v in s):
            raise ValueError(f"invariant factors must be at least 2, got {s}")
        for a, b in zip(s, s[1:]):
            if b % a:
                raise ValueError(f"invariant factors must form a divisibility chain, {a} does not divide {b}")
        object.__setattr__(self, "invariant_factors", s)

    @property
    def order(self) -> int:
        out = 1
        for s in self.invariant_factors:
            out *= s
        return out

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def elements(self) -> list[tuple]:
        return list(product(*(range(s) for s in self.invariant_factors)))

    def add(self, x, y) -> tuple:
        return tuple((a + b) % s for a, b, s in zip(x, y, self.invariant_factors))


@dataclass(frozen=True)
class Quotient:
    """``Lambda / Z^n`` together with the map sending lattice points to cosets."""

    group: AbelianGroup
    to_coords: tuple  # rational matrix: Lambda point -> coset coordinates
    moduli: tuple

    def coset(self, x) -> tuple:
        vals = [sum(Fraction(a) * Fraction(b) for a, b in zip(row, x)) for row in self.to_coords]
        if any(v.denominator != 1 for v in vals):
            raise ValueError(f"{tuple(x)} is not in the lattice")
        return tuple(int(v) % s for v, s in zip(vals, self.moduli))


def quotient(L: RhsLattice) -> Quotient:
    B = L.basis_matrix()
    Binv = rat_inverse(B)
    if any(v.denominator != 1 for row in Binv for v in row):
        raise ValueError("Z^n is not contained in the lattice")
    M = [[int(v) for v in row] for row in Binv]
    D, U, _ = smith_normal_form(M)
    keep = [i for i in range(len(D)) if D[i][i] > 1]
    moduli = tuple(D[i][i] for i in keep)
    UB = matmul(U, Binv)  # x in Lambda -> U (B^-1 x): coordinates modulo the Smith diagonal
    group = AbelianGroup(moduli)
    if Fraction(group.order) != 1 / L.det:
        raise CheckFailure("group order differs from 1/det", {"basis": L.basis})
    return Quotient(group, tuple(tuple(UB[i]) for i in keep), moduli)


def quotient_group(L: RhsLattice) -> AbelianGroup:
    """Invariant factors of ``Lambda / Z^n``."""
    return quotient(L).group


def diam_formula(G: AbelianGroup) -> int:
    """``sum(s_i) - 1`` (0 for the trivial group)."""
    if not G.invariant_factors:
        return 0
    return sum(G.invariant_factors) - 1


def _table(G: AbelianGroup):
    els = G.elements()
    index = {e: i for i, e in enumerate(els)}
    add = [[index[G.add(x, y)] for y in els] for x in els]
    return els, index, add


def _eccentricity(add, gens, size):
    """Largest BFS distance from 0 using steps in ``gens``; -1 if not generating."""
    dist = [-1] * size
    dist[0] = 0
    frontier = [0]
    reached = 1
    level = 0
    while frontier and reached < size:
        level += 1
        nxt = []
        for g in frontier:
            row = add[g]
            for h in gens:
                s = row[h]
                if dist[s] < 0:
                    dist[s] = level
                    nxt.append(s)
        reached += len(nxt)
        frontier = nxt
    if reached < size:
        return -1
    return level


def diam_with_generators(G: AbelianGroup, H: Iterable[Sequence[int]]) -> int:
    """Least k such that sums of at most k elements of H (the empty sum is 0) cover G."""
    els, index, add = _table(G)
    gens = sorted({index[tuple(int(v) % s for v, s in zip(h, G.invariant_factors))] for h in H})
    d = _eccentricity(add, gens, len(els))
    if d < 0:
        raise ValueError("the given elements do not generate the group")
    return d


def diam_bfs(G: AbelianGroup, limit: int = BFS_ORDER_LIMIT) -> int:
    """Maximum of ``diam_H`` over all generating subsets, by exhaustive search.

    Subsets containing 0 are skipped: under the empty-sum convention adding 0
    to H never changes ``diam_H``.
    """
    size = G.order
    if size > limit:
        raise ValueError(f"group order {size} exceeds the exhaustive-search limit {limit}")
    if size == 1:
        return 0
    _, _, add = _table(G)
    nonzero = list(range(1, size))
    best = 0
    for mask in range(1, 1 << len(nonzero)):
        gens = [nonzero[i] for i in range(len(nonzero)) if mask >> i & 1]
        d = _eccentricity(add, gens, size)
        if d > best:
            best = d
    return best


def diameter(G: AbelianGroup, limit: int = BFS_ORDER_LIMIT) -> tuple[int, str]:
    """Definitional diameter when affordable, else the closed formula.

    Returns ``(value, source)`` with ``source`` in ``{"bfs", "formula"}``.
    """
    if G.order <= limit:
        return diam_bfs(G, limit), "bfs"
    return diam_formula(G), "formula"


def phi_j(delta: int, j: int) -> int:
    """Largest generating set of ``Z/delta`` that needs at least j summands (closed form)."""
    if delta < 3 or not 2 <= j <= delta - 1:
        raise ValueError(f"need delta >= 3 and 2 <= j <= delta - 1, got delta={delta}, j={j}")
    return max((delta // d) * ((d - 2) // (j - 1) + 1)
               for d in range(j + 1, delta + 1) if delta % d == 0)


def phi_j_bruteforce(delta: int, j: int, limit: int = 12) -> int:
    """Same quantity by enumerating every subset of ``Z/delta`` (0 allowed in H)."""
    if delta > limit:
        raise ValueError(f"delta {delta} exceeds the brute-force limit {limit}")
    add = [[(x + y) % delta for y in range(delta)] for x in range(delta)]
    best = 0
    for mask in range(1, 1 << delta):
        gens = [x for x in range(delta) if mask >> x & 1]
        if len(gens) <= best:
            continue
        d = _eccentricity(add, gens, delta)
        if d >= j:
            best = len(gens)
    return best


def diam_upper_bound(delta: int, N: int) -> int:
    """``floor(delta / 2^(N-1) + N - 2)`` for a group of order delta with N invariant factors."""
    if N < 1 or 2 ** N > delta:
        raise ValueError(f"a group of order {delta} cannot have {N} invariant factors")
    return delta // 2 ** (N - 1) + N - 2


def abelian_groups(order: int) -> list[AbelianGroup]:
    """Every abelian group of the given order, by invariant factor chain."""

    def chains(rest, smallest):
        # chains s_1 | ... | s_N with product rest and s_1 a multiple of smallest
        if rest == 1:
            yield ()
            return
        for s in range(max(2, smallest), rest + 1):
            if rest % s == 0 and s % smallest == 0:
                for tail in chains(rest // s, s):
                    yield (s,) + tail

    return [AbelianGroup(c) for c in chains(order, 1)]


def cyclic(delta: int) -> AbelianGroup:
    return AbelianGroup(() if delta == 1 else (delta,))

