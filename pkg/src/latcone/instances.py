"""Seeded random instances.

Every generator takes a ``random.Random``. Per-instance streams come from
:func:`rng_for`, which seeds Python's Mersenne Twister with a string, so an
instance is reproducible from ``(seed, index)`` on any platform.
"""

from __future__ import annotations

import random
from typing import Optional

from .cones import Cone
from .exact import delta, determinant, matmul, minor_stats, rank, solve
from .lp import Polytope, is_bounded, is_lattice_free
from .pyramids import Pyramid, PyramidError, simplex_from_rows

PRNG_NAME = "python-random-MT19937/str-seed-v2"


def rng_for(seed: int, index: int, tag: str = "") -> random.Random:
    return random.Random(f"latcone:{tag}:{seed}:{index}")


def random_matrix(rng, m, n, lo=-3, hi=3):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)]


def random_unimodular(rng, n, steps=2):
    """Product of ``steps`` elementary column operations with multipliers +-1, then a signed permutation."""
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    if n > 1:
        for _ in range(steps):
            i, j = rng.sample(range(n), 2)
            c = rng.choice((-1, 1))
            for r in U:
                r[j] += c * r[i]
    perm = list(range(n))
    rng.shuffle(perm)
    signs = [rng.choice((-1, 1)) for _ in range(n)]
    return [[U[r][perm[k]] * signs[k] for k in range(n)] for r in range(n)]


def random_cone(rng, n, m, lo=-3, hi=3, max_delta=None, exact_delta=None, tries=2000) -> Optional[Cone]:
    """Full-dimensional pointed cone ``C(A)`` with uniform entries, by rejection."""
    for _ in range(tries):
        A = random_matrix(rng, m, n, lo, hi)
        if rank(A) < n:
            continue
        d = delta(A)
        if exact_delta is not None and d != exact_delta:
            continue
        if max_delta is not None and d > max_delta:
            continue
        C = Cone(A)
        if C.is_full_dimensional:
            return C
    return None


def random_bimodular_cone(rng, n, m=None, tries=5000) -> Optional[Cone]:
    """``Delta = 2`` cone: entries in {-1, 0, 1}, then a random unimodular change of basis."""
    m = m if m is not None else rng.randint(n, n + 3)
    C = random_cone(rng, n, m, -1, 1, exact_delta=2, tries=tries)
    if C is None:
        return None
    return Cone(matmul([list(r) for r in C.A], random_unimodular(rng, n, 1)))


def random_invertible(rng, n, max_det=12, lo=-3, hi=3, tries=2000):
    for _ in range(tries):
        A = random_matrix(rng, n, n, lo, hi)
        if 1 <= abs(determinant(A)) <= max_det:
            return A
    return None


def random_unimodular_polytope(rng, n, extra=None) -> Polytope:
    """Full-dimensional box cut by difference constraints ``x_i - x_j <= c``, in a random unimodular basis.

    The constraint matrix stacks ``I``, ``-I`` and rows ``e_i - e_j``, whose
    maximal minors lie in {0, +-1}.
    """
    # p is a strictly interior integer point
    p = [rng.randint(-2, 2) for _ in range(n)]
    lo = [x - rng.randint(1, 2) for x in p]
    up = [x + rng.randint(1, 2) for x in p]
    rows, rhs = [], []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        rows.append(e)
        rhs.append(up[i])
        rows.append([-x for x in e])
        rhs.append(-lo[i])
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    k = extra if extra is not None else rng.randint(0, min(3, len(pairs)))
    for i, j in rng.sample(pairs, k):
        r = [0] * n
        r[i], r[j] = 1, -1
        rows.append(r)
        rhs.append(p[i] - p[j] + rng.randint(1, 3))
    U = random_unimodular(rng, n, 1)
    # x = U y: rows A become A U
    return Polytope(matmul(rows, U), rhs)


def random_bounded_polytope(rng, n, max_delta=3, tries=2000) -> Optional[Polytope]:
    """Full-dimensional bounded polytope with ``Delta(A) <= max_delta`` around a random integer point."""
    for _ in range(tries):
        m = rng.randint(n + 1, n + 3)
        A = random_matrix(rng, m, n, -1, 1)
        if rank(A) < n or delta(A) > max_delta:
            continue
        P0 = Polytope(A, [1] * m)
        if not is_bounded(P0):
            continue
        x0 = [rng.randint(-2, 2) for _ in range(n)]
        b = [sum(a * x for a, x in zip(row, x0)) + rng.randint(1, 4) for row in A]
        return Polytope(A, b)
    return None


def random_lattice_free_simplex(rng, n, max_delta=8, tries=5000) -> Optional[Pyramid]:
    """Lattice-free simplex with ``2 <= delta <= max_delta``, split so ``|det A| = delta``."""
    for _ in range(tries):
        A = random_invertible(rng, n, max_delta, -3, 3)
        if A is None or abs(determinant(A)) < 2:
            continue
        c = [rng.randint(1, 3) for _ in range(n)]
        a = [-sum(c[i] * A[i][k] for i in range(n)) for k in range(n)]
        b = [rng.randint(-4, 4) for _ in range(n)]
        v = solve(A, b)
        if all(x.denominator == 1 for x in v):
            continue
        av = sum(x * y for x, y in zip(a, v))
        b_a = int(av // 1) + rng.randint(1, 3)
        rows = A + [a]
        if minor_stats(rows).delta_min > max_delta:
            continue
        try:
            S = simplex_from_rows(rows, b + [b_a])
        except PyramidError:
            continue
        if is_lattice_free(S.polytope())[0]:
            return S
    return None


def random_unimodular_cone(rng, n, extra=None) -> Cone:
    """``Delta = 1`` cone from rows ``e_i`` and ``e_i - e_j`` (``i < j``) in a random unimodular basis."""
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    k = extra if extra is not None else rng.randint(0, min(3, len(pairs)))
    for i, j in rng.sample(pairs, k):
        r = [0] * n
        r[i], r[j] = 1, -1
        rows.append(r)
    return Cone(matmul(rows, random_unimodular(rng, n, 2)))


def random_full_rank(rng, n, m=None, lo=-3, hi=3, tries=1000):
    m = m if m is not None else rng.randint(n, n + 2)
    for _ in range(tries):
        A = random_matrix(rng, m, n, lo, hi)
        if rank(A) == n:
            return A
    return None
