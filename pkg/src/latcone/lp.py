"""Exact rational linear programming over H-polyhedra ``{x : A x <= b}``.

The solver runs a two-phase simplex with Bland's rule on the dual problem
``min b.y  s.t.  A^T y = c, y >= 0``. Its tableau has one row per variable of
the primal, which keeps pivots cheap for the tall, narrow systems used
throughout the package. The primal optimum is recovered from the final basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import ceil, floor
from typing import Iterator, Optional, Sequence

from .exact import as_int_matrix, matvec, rank, solve, submatrix


class UnboundedError(ValueError):
    """Raised when an operation needs a bounded polyhedron."""


@dataclass(frozen=True)
class Polytope:
    """The polyhedron ``{x in R^n : A x <= b}`` with integral ``A``."""

    A: tuple
    b: tuple

    def __post_init__(self):
        A = as_int_matrix(self.A)
        if len(self.b) != len(A):
            raise ValueError(f"A has {len(A)} rows but b has {len(self.b)} entries")
        object.__setattr__(self, "A", tuple(tuple(r) for r in A))
        object.__setattr__(self, "b", tuple(Fraction(x) for x in self.b))

    @property
    def m(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return len(self.A[0])

    @classmethod
    def from_rational(cls, A, b) -> "Polytope":
        """Build from a rational system, clearing denominators row by row."""
        rows, rhs = [], []
        for row, beta in zip(A, b):
            row = [Fraction(v) for v in row]
            den = 1
            for v in row:
                den = den * v.denominator // _gcd(den, v.denominator)
            rows.append([int(v * den) for v in row])
            rhs.append(Fraction(beta) * den)
        return cls(rows, rhs)

    def contains(self, x) -> bool:
        return all(lhs <= beta for lhs, beta in zip(matvec(self.A, x), self.b))

    def intersect(self, A, b) -> "Polytope":
        return Polytope(list(self.A) + [list(r) for r in A], list(self.b) + list(b))


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class LpOutcome:
    status: str  # "optimal" | "unbounded" | "infeasible"
    value: Optional[Fraction] = None
    point: Optional[tuple] = None
    ray: Optional[tuple] = field(default=None)


def _pivot(T, obj, r, k):
    row = T[r]
    piv = row[k]
    if piv != 1:
        row = [v / piv for v in row]
        T[r] = row
    nz = [j for j, v in enumerate(row) if v]
    for i, other in enumerate(T):
        if i != r:
            f = other[k]
            if f:
                for j in nz:
                    other[j] -= f * row[j]
    f = obj[k]
    if f:
        for j in nz:
            obj[j] -= f * row[j]


def _run_simplex(T, obj, basis, allowed):
    """Minimise with Bland's rule; obj holds reduced costs and -value last.

    Returns False when the objective is unbounded below.
    """
    rhs = len(T[0]) - 1
    while True:
        k = next((j for j in allowed if obj[j] < 0), None)
        if k is None:
            return True
        best = None
        for i, row in enumerate(T):
            a = row[k]
            if a > 0:
                ratio = row[rhs] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(T, obj, best[1], k)
        basis[best[1]] = k


def _solve_max(A, b, c):
    """Maximise ``c.x`` over ``A x <= b``: returns (status, x, value)."""
    m, n = len(A), len(c)
    width = m + n + 1
    T = []
    for j in range(n):
        sgn = -1 if c[j] < 0 else 1
        row = [Fraction(sgn * A[i][j]) for i in range(m)] + [Fraction(0)] * n + [Fraction(sgn * c[j])]
        row[m + j] = Fraction(1)
        T.append(row)
    basis = [m + j for j in range(n)]
    # phase 1: minimise the sum of artificials
    obj = [Fraction(0)] * width
    for row in T:
        for j in range(m):
            obj[j] -= row[j]
        obj[-1] -= row[-1]
    _run_simplex(T, obj, basis, range(m))
    if obj[-1] != 0:
        return "dual_infeasible", None, None
    keep = []
    for r in range(n):
        if basis[r] >= m:
            k = next((j for j in range(m) if T[r][j] != 0), None)
            if k is None:
                continue  # redundant equality: A lacks full column rank
            _pivot(T, obj, r, k)
            basis[r] = k
        keep.append(r)
    T = [T[r] for r in keep]
    basis = [basis[r] for r in keep]
    # phase 2: minimise b.y
    obj = [Fraction(b[j]) if j < m else Fraction(0) for j in range(width - 1)] + [Fraction(0)]
    for r, row in enumerate(T):
        cb = obj[basis[r]]
        if cb:
            for j in range(width):
                obj[j] -= cb * row[j]
    if not _run_simplex(T, obj, basis, range(m)):
        return "infeasible", None, None
    rows = sorted(basis)
    x = solve(submatrix(A, rows), [b[i] for i in rows]) if rows else [Fraction(0)] * n
    value = sum(ci * xi for ci, xi in zip(c, x))
    return "optimal", x, value


def _lp(A, b, c) -> LpOutcome:
    status, x, value = _solve_max(A, b, c)
    if status == "optimal":
        return LpOutcome("optimal", Fraction(value), tuple(x))
    if status == "infeasible":
        return LpOutcome("infeasible")
    # dual infeasible: the primal is unbounded or empty
    n = len(c)
    feas, _, _ = _solve_max(A, b, [Fraction(0)] * n)
    if feas != "optimal":
        return LpOutcome("infeasible")
    rA = [list(r) for r in A] + [list(c)]
    rb = [Fraction(0)] * len(A) + [Fraction(1)]
    _, d, _ = _solve_max(rA, rb, c)
    return LpOutcome("unbounded", ray=tuple(d))


def optimize(P: Polytope, c: Sequence, sense: str = "max") -> LpOutcome:
    """Optimise the linear form ``c`` over ``P`` exactly.

    For ``sense="min"`` the returned value is the minimum of ``c.x``; an
    unbounded outcome carries a ray ``d`` of the recession cone improving the
    objective.
    """
    if len(c) != P.n:
        raise ValueError(f"objective has length {len(c)}, polytope lives in dimension {P.n}")
    if sense not in ("max", "min"):
        raise ValueError(f"sense must be 'max' or 'min', got {sense!r}")
    cc = [Fraction(v) for v in c]
    if sense == "min":
        cc = [-v for v in cc]
    out = _lp(P.A, P.b, cc)
    if sense == "min" and out.status == "optimal":
        out = LpOutcome("optimal", -out.value, out.point)
    return out


def is_bounded(P: Polytope) -> bool:
    """True if ``P`` is empty or bounded (every coordinate bounded both ways)."""
    for i in range(P.n):
        e = [0] * P.n
        e[i] = 1
        for sense in ("max", "min"):
            out = optimize(P, e, sense)
            if out.status == "infeasible":
                return True
            if out.status == "unbounded":
                return False
    return True


def _require_bounded(P):
    if not is_bounded(P):
        raise UnboundedError("polyhedron is unbounded")


def _interval(A, b):
    """Integer range of a one-dimensional system ``a_i x <= b_i``."""
    lo, hi = None, None
    for row, beta in zip(A, b):
        a = row[0]
        if a == 0:
            if beta < 0:
                return range(0)
        elif a > 0:
            t = beta / a
            hi = t if hi is None or t < hi else hi
        else:
            t = beta / a
            lo = t if lo is None or t > lo else lo
    if lo is None or hi is None:
        raise UnboundedError("slice is unbounded")
    return range(ceil(lo), floor(hi) + 1)


def _iter_points(A, b, prefix) -> Iterator[tuple]:
    n = len(A[0])
    if n == 1:
        for v in _interval(A, b):
            yield prefix + (v,)
        return
    e = [Fraction(1)] + [Fraction(0)] * (n - 1)
    hi = _lp(A, b, e)
    if hi.status == "infeasible":
        return
    lo = _lp(A, b, [-v for v in e])
    if hi.status != "optimal" or lo.status != "optimal":
        raise UnboundedError("slice is unbounded")
    rest = [list(r[1:]) for r in A]
    col = [r[0] for r in A]
    for v in range(ceil(-lo.value), floor(hi.value) + 1):
        yield from _iter_points(rest, [beta - a * v for a, beta in zip(col, b)], prefix + (v,))


def integer_points(P: Polytope, assume_bounded: bool = False) -> list[tuple]:
    """All integer points of a bounded polytope in lexicographic order.

    The first coordinate is fixed to each integer of its exact LP range and the
    remaining coordinates are enumerated recursively on the slice. Callers that
    know ``P`` is bounded may skip the upfront check; an unbounded slice still
    raises.
    """
    if not assume_bounded:
        _require_bounded(P)
    return list(_iter_points(P.A, P.b, ()))


def is_lattice_free(P: Polytope) -> tuple[bool, Optional[tuple]]:
    """``(True, None)`` if ``P`` has no integer point, else ``(False, point)``."""
    _require_bounded(P)
    for x in _iter_points(P.A, P.b, ()):
        return False, x
    return True, None


def vertices(P: Polytope) -> list[tuple]:
    """Vertices of ``P`` by exhaustive basis enumeration (desk scale only)."""
    n = P.n
    if rank(P.A) < n:
        return []
    found = set()
    for I in combinations(range(P.m), n):
        sub = submatrix(P.A, I)
        if rank(sub) < n:
            continue
        x = solve(sub, [P.b[i] for i in I])
        if P.contains(x):
            found.add(tuple(x))
    return sorted(found)
