"""Slow independent references used by the unit tests."""

from fractions import Fraction
from itertools import product


def cofactor_det(M):
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * cofactor_det([row[:j] + row[j + 1:] for row in M[1:]])
               for j in range(n) if M[0][j])


def box_points(A, b, radius):
    """Integer points of ``A x <= b`` inside ``[-radius, radius]^n`` by scanning."""
    n = len(A[0])
    return sorted(x for x in product(range(-radius, radius + 1), repeat=n)
                  if all(sum(a * v for a, v in zip(row, x)) <= beta for row, beta in zip(A, b)))


def decomposable(h, others, A):
    """True if ``h`` is a sum of two nonzero integer points of the cone ``A x >= 0``.

    Scans ``x`` with ``0 <= A x <= A h`` among the supplied candidate points.
    """
    Ah = [sum(a * v for a, v in zip(row, h)) for row in A]
    for x in others:
        if x == tuple(h) or not any(x):
            continue
        Ax = [sum(a * v for a, v in zip(row, x)) for row in A]
        if all(0 <= u <= w for u, w in zip(Ax, Ah)):
            return True
    return False


def lp_brute_max(A, b, c, radius):
    """Max of ``c x`` over the box-truncated integer hull (used only as a lower bound)."""
    pts = box_points(A, b, radius)
    return max((Fraction(sum(ci * v for ci, v in zip(c, x))) for x in pts), default=None)
