"""Exact integer and rational linear algebra.

Matrices are plain lists of rows. Integer matrices hold Python ints, rational
ones hold :class:`fractions.Fraction`. Nothing here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Sequence

Matrix = list[list[int]]
RatMatrix = list[list[Fraction]]


def as_int_matrix(M: Sequence[Sequence[int]]) -> Matrix:
    """Validate ``M`` as a non-empty rectangular integer matrix and copy it."""
    rows = [list(r) for r in M]
    if not rows or not rows[0]:
        raise ValueError("matrix must have at least one row and one column")
    n = len(rows[0])
    for i, r in enumerate(rows):
        if len(r) != n:
            raise ValueError(f"ragged matrix: row {i} has {len(r)} entries, expected {n}")
        for v in r:
            if isinstance(v, bool) or not isinstance(v, int):
                raise TypeError(f"non-integer entry {v!r} in row {i}")
    return rows


def shape(M: Sequence[Sequence]) -> tuple[int, int]:
    return len(M), len(M[0]) if M else 0


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(M):
    return [list(c) for c in zip(*M)]


def matmul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, x):
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def dot(x, y):
    return sum(a * b for a, b in zip(x, y))


def submatrix(M, rows, cols=None):
    if cols is None:
        return [list(M[i]) for i in rows]
    return [[M[i][j] for j in cols] for i in rows]


def vec_gcd(v) -> int:
    return reduce(gcd, (abs(int(x)) for x in v), 0)


def primitive(v) -> list[int]:
    """Divide an integer vector by the gcd of its entries."""
    g = vec_gcd(v)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return [x // g for x in v]


def integral_scale(v) -> list[int]:
    """Positive multiple of a rational vector that is a primitive integer vector."""
    den = reduce(lambda a, b: a * b // gcd(a, b), (Fraction(x).denominator for x in v), 1)
    return primitive([int(Fraction(x) * den) for x in v])


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free Bareiss elimination."""
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    a = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def rat_determinant(M) -> Fraction:
    """Determinant of a square rational matrix by Gaussian elimination."""
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("determinant needs a square matrix")
    a = [[Fraction(x) for x in r] for r in M]
    det = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return det


def adjugate(M: Sequence[Sequence[int]]) -> Matrix:
    """Adjugate (transposed cofactor matrix); ``adj(M) @ M == det(M) * I``."""
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("adjugate needs a square matrix")
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        rows = [r for r in range(n) if r != i]
        for j in range(n):
            cols = [c for c in range(n) if c != j]
            adj[j][i] = (-1) ** (i + j) * determinant(submatrix(M, rows, cols))
    return adj


def rref(M):
    """Reduced row echelon form over the rationals; returns (R, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in M]
    m, n = shape(a)
    pivots = []
    row = 0
    for col in range(n):
        p = next((i for i in range(row, m) if a[i][col] != 0), None)
        if p is None:
            continue
        a[row], a[p] = a[p], a[row]
        inv = 1 / a[row][col]
        a[row] = [x * inv for x in a[row]]
        for i in range(m):
            if i != row and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    return a, pivots


def rank(M) -> int:
    if not M:
        return 0
    return len(rref(M)[1])


def kernel(M) -> RatMatrix:
    """Basis of the rational null space of ``M`` (list of vectors)."""
    n = len(M[0])
    R, pivots = rref(M)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i][f]
        basis.append(v)
    return basis


def solve(M, b):
    """One rational solution of ``M x = b`` (free variables set to 0), or None."""
    m, n = shape(M)
    aug = [list(M[i]) + [b[i]] for i in range(m)]
    R, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(pivots):
        x[p] = R[i][n]
    return x


def rat_inverse(M) -> RatMatrix:
    n = len(M)
    aug = [[Fraction(x) for x in M[i]] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [r[n:] for r in R]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def hermite_normal_form(M: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Column-style Hermite normal form.

    Returns ``(H, U)`` with ``H == M @ U``, ``U`` unimodular and ``H`` in lower
    column echelon form: each pivot is positive and the entries left of a pivot
    lie in ``[0, pivot)``.
    """
    H = [list(r) for r in M]
    m, n = shape(H)
    U = identity(n)

    def combine(i, p, j):
        a, b = H[i][p], H[i][j]
        g, x, y = _xgcd(a, b)
        ag, bg = a // g, b // g
        for T in (H, U):
            for r in T:
                cp, cj = r[p], r[j]
                r[p] = x * cp + y * cj
                r[j] = -bg * cp + ag * cj

    p = 0
    for i in range(m):
        if p == n:
            break
        for j in range(p + 1, n):
            if H[i][j] != 0:
                combine(i, p, j)
        if H[i][p] == 0:
            continue
        if H[i][p] < 0:
            for T in (H, U):
                for r in T:
                    r[p] = -r[p]
        piv = H[i][p]
        for k in range(p):
            q = H[i][k] // piv
            if q:
                for T in (H, U):
                    for r in T:
                        r[k] -= q * r[p]
        p += 1
    return H, U


def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form ``(D, U, V)`` with ``U @ M @ V == D``.

    ``U`` and ``V`` are unimodular and the diagonal of ``D`` is a nonnegative
    divisibility chain ``d1 | d2 | ...`` (trailing zeros for rank deficiency).
    """
    D = [list(r) for r in M]
    m, n = shape(D)
    U, V = identity(m), identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for T in (D, V):
            for r in T:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for T in (D, V):
            for r in T:
                r[dst] += q * r[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return D, U, V
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            piv = D[t][t]
            clean = True
            for i in range(t + 1, m):
                q = D[i][t] // piv
                if q:
                    add_row(i, t, -q)
                clean &= D[i][t] == 0
            for j in range(t + 1, n):
                q = D[t][j] // piv
                if q:
                    add_col(j, t, -q)
                clean &= D[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return D, U, V


def gcd_of_minors(M: Sequence[Sequence[int]], k: int | None = None) -> int:
    """gcd of all k x k minors (default: maximal minors, k = min(m, n))."""
    m, n = shape(M)
    if k is None:
        k = min(m, n)
    g = 0
    for rows in combinations(range(m), k):
        for cols in combinations(range(n), k):
            g = gcd(g, determinant(submatrix(M, rows, cols)))
            if g == 1:
                return 1
    return abs(g)


def maximal_minors(A: Sequence[Sequence[int]]) -> dict[tuple[int, ...], int]:
    """All n x n minors of an m x n matrix, keyed by row subset."""
    m, n = shape(A)
    return {I: determinant(submatrix(A, I)) for I in combinations(range(m), n)}


@dataclass(frozen=True)
class MinorStats:
    delta_max: int
    delta_min: int
    gcd_minors: int
    rank: int


def minor_stats(A: Sequence[Sequence[int]]) -> MinorStats:
    """Exhaustive statistics of the maximal minors of an m x n matrix, m >= n.

    ``delta_min`` is the smallest absolute value of an invertible n x n
    submatrix (0 if there is none).
    """
    m, n = shape(A)
    if m < n:
        raise ValueError(f"need at least as many rows as columns, got {m}x{n}")
    dets = [abs(d) for d in maximal_minors(A).values()]
    nonzero = [d for d in dets if d]
    return MinorStats(
        delta_max=max(dets),
        delta_min=min(nonzero) if nonzero else 0,
        gcd_minors=reduce(gcd, dets, 0),
        rank=rank(A),
    )


def delta(A) -> int:
    """Largest absolute n x n minor of ``A``."""
    return max(abs(d) for d in maximal_minors(A).values())


def is_unimodular(U) -> bool:
    return abs(determinant(U)) == 1
