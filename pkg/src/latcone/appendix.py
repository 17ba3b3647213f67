"""The six-row example showing that maximal scaling of the generators matters.

Rows and generators are numbered from 1 in the published text; the tuples
below keep the published order, so ``R[0]`` is ``r^1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .cones import Cone
from .exact import gcd_of_minors, matvec, submatrix
from .hilbert import is_hilbert_element

A = (
    (1, 0, 0, 0),
    (0, 1, 0, 0),
    (1, 8, 4, 11),
    (1, 4, 3, 6),
    (-1, -7, -3, -10),
    (-1, -7, -2, -9),
)

R = (
    (14, 0, 2, -2),
    (0, 7, 7, -7),
    (0, 0, 10, -3),
    (0, 15, 6, -13),
    (0, 9, 4, -8),
    (1, 8, 3, -7),
    (0, 0, 11, -4),
)

H = (6, 1, 2, -2)

# generator number (1-based) -> coefficient
DECOMPOSITIONS = (
    {1: Fraction(3, 7), 5: Fraction(1, 9), 7: Fraction(4, 63)},
    {1: Fraction(47, 112), 6: Fraction(1, 8), 7: Fraction(1, 14)},
)

FACE_ROWS = (2, 3, 5, 6)  # rows tight at r^1, 1-based
GCD2_ROWS = (2, 3, 6)


def evaluate(decomposition) -> tuple:
    return tuple(sum(c * R[i - 1][k] for i, c in decomposition.items()) for k in range(4))


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


def run_appendix() -> list[Check]:
    """Re-derive every claim of the example; one :class:`Check` per claim."""
    from .conjectures import scaled_generator_refutation

    C = Cone(A)
    out = []
    got = sorted(C.normalized.rays)
    out.append(Check("normalized generators", got == sorted(R), f"{len(got)} generators"))

    gcds = {I: gcd_of_minors(submatrix(A, [i - 1 for i in I])) for I in combinations(FACE_ROWS, 3)}
    ok = gcds[GCD2_ROWS] == 2 and all(g == 1 for I, g in gcds.items() if I != GCD2_ROWS)
    out.append(Check("face gcds", ok, ", ".join(f"{I}: {g}" for I, g in gcds.items())))

    out.append(Check("spindle test on h", is_hilbert_element(C, H), f"h = {H}"))

    sums = []
    for k, dec in enumerate(DECOMPOSITIONS, 1):
        s = sum(dec.values())
        sums.append(s)
        out.append(Check(f"decomposition {k}", evaluate(dec) == H, f"coefficient sum {s}"))
    out.append(Check("coefficient sums", sums == [Fraction(38, 63), Fraction(69, 112)],
                     f"{sums[0]} and {sums[1]}"))

    Ar1 = tuple(matvec(A, R[0]))
    bound = Fraction(1, 2) - Fraction(1, max(Ar1))
    ok = Ar1 == (14, 0, 0, 8, 0, 0) and bound == Fraction(3, 7) and all(d[1] <= bound for d in DECOMPOSITIONS)
    out.append(Check("coefficient bound on r^1", ok, f"A r^1 = {Ar1}, bound {bound}"))

    ref = scaled_generator_refutation()
    out.append(Check("full generator set", ref.full_min <= Fraction(38, 63), f"min sum {ref.full_min}"))
    out.append(Check("r^1 halved", ref.scaled_min > 1, f"min sum {ref.scaled_min}"))
    return out
