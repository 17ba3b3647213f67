"""Pyramids ``P(A, a, b, b_a)``, their facet-width bounds, the S^G family and
the flat-direction construction for lattice-free simplices."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import prod
from typing import Optional, Sequence

from .cones import Cone, dual_position
from .errors import CheckFailure
from .exact import (
    as_int_matrix,
    delta,
    determinant,
    gcd_of_minors,
    matmul,
    maximal_minors,
    minor_stats,
    rank,
    rat_inverse,
    solve,
    submatrix,
    transpose,
)
from .groups import diam_bfs, diam_formula, diameter, quotient, rhs_lattice, BFS_ORDER_LIMIT
from .hilbert import hilbert_basis, height
from .lp import Polytope, is_bounded, is_lattice_free, optimize
from .widths import facet_width, lattice_width, width_in_direction


class PyramidError(ValueError):
    """Invalid pyramid data; ``reason`` names the violated precondition."""

    def __init__(self, reason, message):
        super().__init__(message)
        self.reason = reason


class NotLatticeFreeError(ValueError):
    def __init__(self, witness):
        super().__init__(f"polytope contains the integer point {witness}")
        self.witness = witness


@dataclass(frozen=True)
class Pyramid:
    A: tuple
    a: tuple
    b: tuple
    b_a: int
    v: tuple
    bounded: bool

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def stacked(self) -> list[list[int]]:
        return [list(r) for r in self.A] + [list(self.a)]

    def polytope(self) -> Polytope:
        return Polytope(self.stacked, list(self.b) + [self.b_a])

    @property
    def is_simplex(self) -> bool:
        return len(self.A) == self.n


def _integral(x, what):
    if isinstance(x, bool) or Fraction(x).denominator != 1:
        raise PyramidError("integrality", f"{what} must be integral, got {x!r}")
    return int(x)


def build_pyramid(A, a, b, b_a, allow_degenerate: bool = False) -> Pyramid:
    """Validate the data and locate the apex ``v`` with ``A v = b``.

    ``allow_degenerate`` accepts ``b_a = a.v`` (the pyramid is the apex alone),
    which ``S^(2)`` needs.
    """
    try:
        A = as_int_matrix(A)
    except (TypeError, ValueError) as exc:
        raise PyramidError("integrality", str(exc)) from exc
    m, n = len(A), len(A[0])
    a = [_integral(x, "a") for x in a]
    b = [_integral(x, "b") for x in b]
    b_a = _integral(b_a, "b_a")
    if len(a) != n or len(b) != m:
        raise PyramidError("shape", f"expected a of length {n} and b of length {m}")
    if rank(A) < n:
        raise PyramidError("rank", "A must have full column rank")
    v = solve(A, b)
    if v is None:
        raise PyramidError("apex", "A v = b has no solution")
    if not any(a):
        raise PyramidError("dual", "a must be nonzero")
    pos = dual_position(Cone(A), a)
    if pos == "outside":
        raise PyramidError("dual", "-a is not in the dual cone of C(A)")
    av = sum(x * y for x, y in zip(a, v))
    if not (b_a > av or (allow_degenerate and b_a == av)):
        raise PyramidError("b_a", f"b_a not above apex: b_a = {b_a}, a.v = {av}")
    P = Pyramid(tuple(map(tuple, A)), tuple(a), tuple(b), b_a, tuple(v), pos == "interior")
    if P.bounded and not is_bounded(P.polytope()):
        raise CheckFailure("-a is interior to the dual cone but the LP finds the pyramid unbounded",
                           {"A": A, "a": a, "b": b, "b_a": b_a})
    return P


def facet_width_a(P: Pyramid) -> Fraction:
    """``w^a(P) = b_a - a.v``, confirmed by two LPs."""
    Q = P.polytope()
    hi, lo = optimize(Q, P.a, "max"), optimize(Q, P.a, "min")
    w = P.b_a - sum(x * y for x, y in zip(P.a, P.v))
    if hi.status != "optimal" or lo.status != "optimal" or hi.value - lo.value != w:
        raise CheckFailure("LP width in direction a differs from b_a - a.v",
                           {"A": P.A, "a": P.a, "b": P.b, "b_a": P.b_a})
    return w


def require_lattice_free(P: Pyramid) -> None:
    free, witness = is_lattice_free(P.polytope())
    if not free:
        raise NotLatticeFreeError(witness)


@dataclass(frozen=True)
class BoundReport:
    w_a: Fraction
    bound_eq4: Fraction
    bound_eq5: int
    tight: bool  # w_a meets the group bound evaluated with the closed diameter formula
    diam_source: str
    delta: int
    gcd: int
    height: Fraction
    diam: int
    diam_formula: int
    tight_bfs: Optional[bool]  # same, with the BFS diameter
    group: tuple
    flags: tuple = field(default=())


def pyramid_bound_report(P: Pyramid, limit: int = BFS_ORDER_LIMIT) -> BoundReport:
    """Evaluate both facet-width bounds on a lattice-free pyramid."""
    require_lattice_free(P)
    w = facet_width_a(P)
    D = delta(P.stacked)
    g = gcd_of_minors([list(r) for r in P.A])
    L = rhs_lattice(P.A)
    AB = matmul([[Fraction(x) for x in r] for r in P.A], L.basis_matrix())
    CB = Cone([[int(x) for x in r] for r in AB])
    H = max(height(CB, e, CB.normalized)[0] for e in hilbert_basis(CB))
    G = quotient(L).group
    diam, source = diameter(G, limit)
    df = diam_formula(G)
    eq4 = Fraction(D, g) * H * diam - 1
    flags = []
    if w > eq4:
        if source == "bfs":
            raise CheckFailure("w^a exceeds the group-diameter bound", {"A": P.A, "a": P.a, "b": P.b, "b_a": P.b_a})
        flags.append("eq4_violated_with_formula_diameter")
    tight = w == Fraction(D, g) * H * df - 1
    tight_bfs = (w == eq4) if source == "bfs" else None
    if not tight:
        flags.append("non_tight_vs_formula")
    if source == "bfs" and diam != df:
        flags.append("formula_vs_bfs_discrepancy")
    if source == "formula":
        flags.append("diameter_from_formula")
    if w > D - 2:
        flags.append("eq5_exceeded")
    return BoundReport(w, eq4, D - 2, tight, source, D, g, H, diam, df, tight_bfs,
                       G.invariant_factors, tuple(flags))


def generate_sg(factors: Sequence[int]) -> Pyramid:
    """The simplex ``S^G`` for ``G = Z/s_1 + ... + Z/s_N``."""
    s = [int(x) for x in factors]
    if not s or any(x < 2 for x in s):
        raise ValueError("factors must be at least 2")
    for x, y in zip(s, s[1:]):
        if y % x:
            raise ValueError(f"factors must satisfy s_1 | s_2 | ... | s_N; {x} does not divide {y}")
    N = len(s)
    A = [[s[i] if i == j else 0 for j in range(N)] for i in range(N)]
    P = build_pyramid(A, [-x for x in s], [-1] * N, sum(s) - 1, allow_degenerate=True)
    require_lattice_free(P)
    if not gcd_of_minors(A) == prod(s) == delta(P.stacked):
        raise CheckFailure("gcd(A) = prod s_i = Delta fails for S^G", {"factors": s})
    return P


def _simplex_parts(P: Pyramid):
    if not P.is_simplex:
        raise ValueError("not a simplex: A must be square")
    A = [list(r) for r in P.A]
    d = abs(determinant(A))
    Ainv = rat_inverse(A)
    return A, d, [list(c) for c in transpose(Ainv)]


def simplex_flat_direction(P: Pyramid) -> Optional[tuple]:
    """Integral ``d = (A_1 + ... + A_l) / delta`` when the columns of ``A^-1`` fall
    into at most one non-trivial coset of a cyclic ``Lambda / Z^n``; None otherwise."""
    A, d, hs = _simplex_parts(P)
    Q = quotient(rhs_lattice(A))
    if Q.group.rank > 1:
        return None
    cosets = [Q.coset(h) for h in hs]
    zero = tuple([0] * Q.group.rank)
    nontrivial = {c for c in cosets if c != zero}
    if len(nontrivial) != 1:
        return None
    rows = [i for i, c in enumerate(cosets) if c != zero]
    dvec = [Fraction(sum(A[i][k] for i in rows), d) for k in range(P.n)]
    if any(x.denominator != 1 for x in dvec):
        raise CheckFailure("flat direction d is not integral", {"A": A})
    dvec = tuple(int(x) for x in dvec)
    if is_lattice_free(P.polytope())[0]:
        wd = width_in_direction(P.polytope(), dvec)
        if not wd < 1 - Fraction(1, d):
            raise CheckFailure("w^d >= 1 - 1/delta on a lattice-free simplex", {"A": A, "d": dvec})
    return dvec


def simplex_from_rows(rows, rhs) -> Pyramid:
    """Split an (n+1)-row simplex so the n rows forming ``A`` have ``|det A| = delta``.

    Ties go to the lexicographically first row subset.
    """
    rows = as_int_matrix(rows)
    n = len(rows[0])
    if len(rows) != n + 1:
        raise ValueError("a simplex in dimension n needs n + 1 inequalities")
    dl = minor_stats(rows).delta_min
    for I in combinations(range(n + 1), n):
        if abs(determinant(submatrix(rows, I))) == dl:
            j = next(k for k in range(n + 1) if k not in I)
            return build_pyramid(submatrix(rows, I), rows[j], [rhs[i] for i in I], rhs[j])
    raise ValueError("no invertible n x n submatrix")


@dataclass(frozen=True)
class SimplexWidthReport:
    delta: int
    facet_width: Fraction
    diam: int
    lattice_width: Fraction
    direction: tuple
    flat_direction: Optional[tuple]
    flat_width: Optional[Fraction]
    radius: int


def simplex_width_check(P: Pyramid, radius: int = 5) -> SimplexWidthReport:
    """Check ``w^F < diam <= delta - 1`` and ``w < floor(delta / 2)``.

    The lattice width comes from a radius-limited search, which can only
    overestimate, so the strict inequality transfers to the true width.
    """
    A, d, _ = _simplex_parts(P)
    if d != minor_stats(P.stacked).delta_min:
        raise ValueError("|det A| must equal delta of the stacked matrix")
    require_lattice_free(P)
    Q = P.polytope()
    wf = facet_width(Q).width
    G = quotient(rhs_lattice(A)).group
    diam = diam_bfs(G)
    inst = {"A": P.A, "a": P.a, "b": P.b, "b_a": P.b_a}
    if not wf < diam <= d - 1:
        raise CheckFailure("w^F < diam <= delta - 1 fails", inst)
    lw = lattice_width(Q, radius)
    if not lw.width < d // 2:
        raise CheckFailure("w >= floor(delta / 2) on a lattice-free simplex", inst)
    fd = simplex_flat_direction(P)
    fw = width_in_direction(Q, fd) if fd is not None else None
    return SimplexWidthReport(d, wf, diam, lw.width, lw.direction, fd, fw, radius)


def _is_prime(k: int) -> bool:
    return k >= 2 and all(k % p for p in range(2, int(k ** 0.5) + 1))


def corollary28_classify(P: Pyramid) -> str:
    """``prime_delta`` | ``half_delta_minors`` | ``unclassified`` by a scan of the minors of A.

    Classified lattice-free instances are also checked against ``w^a <= Delta - 2``.
    """
    A = [list(r) for r in P.A]
    D = delta(A)
    if _is_prime(D):
        kind = "prime_delta"
    elif D % 2 == 0 and all(abs(x) in (0, D // 2, D) for x in maximal_minors(A).values()):
        kind = "half_delta_minors"
    else:
        return "unclassified"
    if is_lattice_free(P.polytope())[0]:
        if facet_width_a(P) > delta(P.stacked) - 2:
            raise CheckFailure("classified lattice-free pyramid violates w^a <= Delta - 2",
                               {"A": P.A, "a": P.a, "b": P.b, "b_a": P.b_a, "class": kind})
    return kind
