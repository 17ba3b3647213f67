"""Instance checkers for the Hilbert-basis height conjectures and the results
proved for special classes of cones."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .cones import Cone, dual_position
from .errors import CheckFailure
from .exact import (
    delta,
    determinant,
    gcd_of_minors,
    hermite_normal_form,
    matmul,
    matvec,
    maximal_minors,
    rank,
    rat_inverse,
    submatrix,
    vec_gcd,
)
from .hilbert import HilbertElement, hilbert_basis, height, is_hilbert_element


@dataclass(frozen=True)
class ShcVerdict:
    holds: bool
    element: HilbertElement
    coefficients: tuple  # over C.normalized, in its order
    coefficient_sum: Fraction
    lemma32_ok: bool
    lemma33_ok: bool


def _inf(v):
    return max(abs(x) for x in v)


def lemma32_ok(C: Cone, element: HilbertElement, lam, gens) -> bool:
    """``lam_i <= 1/gcd(r^i) - 1/|A r^i|_inf`` for a non-trivial element."""
    if element.trivial:
        return True
    return all(l <= Fraction(1, vec_gcd(r)) - Fraction(1, _inf(matvec(C.A, r)))
               for l, r in zip(lam, gens))


def lemma33_ok(C: Cone, lam, gens) -> bool:
    """``lam_i >= 1/|A r^i|_inf`` when exactly two coefficients are positive."""
    used = [(l, r) for l, r in zip(lam, gens) if l > 0]
    if len(used) != 2:
        return True
    return all(l >= Fraction(1, _inf(matvec(C.A, r))) for l, r in used)


def _element(C: Cone, h) -> HilbertElement:
    if isinstance(h, HilbertElement):
        return h
    h = tuple(h)
    if not is_hilbert_element(C, h):
        raise ValueError(f"{h} is not a Hilbert basis element")
    d = C.face_dim(h)
    return HilbertElement(h, d == 1, d)


def shc_check(C: Cone, h=None):
    """Height of ``h`` (or of every Hilbert element) w.r.t. the normalized generators.

    Returns one :class:`ShcVerdict`, or a list when ``h`` is None.
    """
    if h is None:
        return [shc_check(C, e) for e in hilbert_basis(C)]
    e = _element(C, h)
    gens = C.normalized.rays
    value, lam = height(C, e, gens)
    recon = [sum(l * r[k] for l, r in zip(lam, gens)) for k in range(C.n)]
    if recon != list(e.vector) or any(l < 0 for l in lam):
        raise CheckFailure("height certificate does not reproduce h", {"A": C.A, "h": e.vector})
    return ShcVerdict(value <= 1, e, tuple(lam), value,
                      lemma32_ok(C, e, lam, gens), lemma33_ok(C, lam, gens))


def weak_hc_check(C: Cone, a: Sequence[int], h) -> bool:
    """``-a.h <= Delta((A; a))`` for ``-a`` in the dual cone and a Hilbert element ``h``."""
    if dual_position(C, a) == "outside":
        raise ValueError("-a is not in the dual cone")
    e = _element(C, h)
    lhs = -sum(x * y for x, y in zip(a, e.vector))
    return lhs <= delta([list(r) for r in C.A] + [list(a)])


def bimodular_decompose(C: Cone, h) -> tuple[int, int]:
    """Indices ``i < j`` into ``C.normalized`` with ``2 h = r^i + r^j``."""
    if C.delta != 2:
        raise ValueError(f"cone is not bimodular (Delta = {C.delta})")
    e = _element(C, h)
    if e.trivial:
        raise ValueError("trivial element: h lies on an extreme ray")
    gens = C.normalized.rays
    target = tuple(2 * x for x in e.vector)
    for i, j in combinations(range(len(gens)), 2):
        if tuple(x + y for x, y in zip(gens[i], gens[j])) == target:
            lam = [Fraction(0)] * len(gens)
            lam[i] = lam[j] = Fraction(1, 2)
            if not lemma32_ok(C, e, lam, gens) or not lemma33_ok(C, lam, gens):
                raise CheckFailure("coefficient bound fails on a bimodular pair",
                                   {"A": C.A, "h": e.vector, "pair": (i, j)})
            return i, j
    raise CheckFailure("critical: no pair 2h = r^i + r^j for a non-trivial bimodular element",
                       {"A": C.A, "h": e.vector})


@dataclass(frozen=True)
class SimplicialEntry:
    element: tuple
    height: Fraction
    support: int  # |supp(A h)|


@dataclass(frozen=True)
class SimplicialReport:
    delta: int
    entries: tuple

    @property
    def ok(self) -> bool:
        return all(e.height <= 1 and e.support <= self.delta for e in self.entries)


def simplicial_check(C: Cone) -> SimplicialReport:
    """Every Hilbert element has height at most 1 and ``|supp(A h)| <= Delta``."""
    if C.m != C.n:
        raise ValueError("simplicial check needs a square matrix")
    d = abs(determinant([list(r) for r in C.A]))
    entries = []
    for e in hilbert_basis(C):
        value = height(C, e, C.normalized)[0]
        supp = sum(1 for x in matvec(C.A, e.vector) if x)
        entries.append(SimplicialEntry(e.vector, value, supp))
    rep = SimplicialReport(d, tuple(entries))
    if not rep.ok:
        raise CheckFailure("critical: simplicial cone violates height <= 1 or face dim <= Delta",
                           {"A": C.A, "entries": entries})
    return rep


@dataclass(frozen=True)
class Reduction:
    cone: Cone
    h: tuple
    scale: int
    rows: tuple  # the chosen I
    U: tuple  # unimodular, A_I U = (H, 0)

    def lift(self) -> tuple:
        n = len(self.U)
        y = [0] * (n - len(self.h)) + list(self.h)
        return tuple(matvec([list(r) for r in self.U], y))


def _face_rows(C: Cone, h):
    k = C.face_dim(h)
    T = C.tight_rows(h)
    best, choices = 0, []
    for I in combinations(T, C.n - k):
        sub = submatrix(C.A, I)
        if rank(sub) != C.n - k:
            continue
        g = gcd_of_minors(sub)
        if g > best:
            best, choices = g, [I]
        elif g == best:
            choices.append(I)
    return k, best, choices


def _project(C: Cone, I, h):
    n = C.n
    H, U = hermite_normal_form(submatrix(C.A, I))
    r = len(I)
    if any(H[i][j] for i in range(r) for j in range(r, n)):
        raise CheckFailure("Hermite form of A_I is not of the shape (H, 0)", {"A": C.A, "I": I})
    scale = abs(determinant([row[:r] for row in H]))
    AU = matmul([list(x) for x in C.A], U)
    sub = [row[r:] for row in AU]
    Uinv = [[int(x) for x in row] for row in rat_inverse(U)]
    y = matvec(Uinv, list(h))
    if any(y[:r]):
        raise CheckFailure("h does not map into the coordinate face", {"A": C.A, "h": h})
    return Cone(sub), tuple(y[r:]), scale, U


def reduce_to_full_dim(C: Cone, h: Sequence[int]) -> Reduction:
    """Move the face containing ``h`` onto coordinate hyperplanes and project.

    The face rows ``I`` are the lexicographically first subset of maximal gcd;
    every other maximizing subset must give the same Hilbert-element verdict.
    """
    h = tuple(int(x) for x in h)
    if not any(h) or not C.contains(h):
        raise ValueError("h must be a nonzero point of the cone")
    k, best, choices = _face_rows(C, h)
    n = C.n
    if k == n:
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        return Reduction(C, h, 1, (), ident)
    if best != gcd_of_minors(submatrix(C.A, choices[0])):
        raise CheckFailure("face row selection inconsistent", {"A": C.A, "h": h})
    verdict = is_hilbert_element(C, h)
    out = None
    for I in choices:
        Cp, hp, scale, U = _project(C, I, h)
        if scale != best:
            raise CheckFailure("|det H| differs from gcd(A_I)", {"A": C.A, "I": I})
        if is_hilbert_element(Cp, hp) != verdict:
            raise CheckFailure("Hilbert status changes under the face reduction", {"A": C.A, "h": h, "I": I})
        red = Reduction(Cp, hp, scale, tuple(I), tuple(map(tuple, U)))
        if red.lift() != h:
            raise CheckFailure("lifting the reduced point does not give h back", {"A": C.A, "h": h})
        if out is None:
            out = red
    return out


@dataclass(frozen=True)
class Theorem11Report:
    classification: str  # "m_le_n_plus_1" | "minors_k_2k" | "unclassified"
    k: Optional[int]
    verdicts: tuple
    holds: bool
    critical: bool


def classify_theorem11(C: Cone) -> tuple[str, Optional[int]]:
    if C.m <= C.n + 1:
        return "m_le_n_plus_1", None
    vals = {abs(x) for x in maximal_minors([list(r) for r in C.A]).values()} - {0}
    k = min(vals)
    if vals <= {k, 2 * k}:
        return "minors_k_2k", k
    return "unclassified", None


def theorem11_router(C: Cone) -> Theorem11Report:
    """Classify by the SHC sufficient conditions and run the check either way."""
    kind, k = classify_theorem11(C)
    verdicts = shc_check(C)
    holds = all(v.holds for v in verdicts)
    return Theorem11Report(kind, k, tuple(verdicts), holds, kind != "unclassified" and not holds)


@dataclass(frozen=True)
class ScalingRefutation:
    full_min: Fraction
    full_lambda: tuple
    scaled_min: Fraction
    scaled_lambda: tuple


def scaled_generator_refutation(A=None, generators=None, h=None) -> ScalingRefutation:
    """Minimal coefficient sum for ``h`` before and after halving the first generator.

    Defaults to the appendix example, where halving ``r^1`` pushes the minimum above 1.
    """
    from . import appendix

    A = appendix.A if A is None else A
    gens = list(appendix.R if generators is None else generators)
    h = appendix.H if h is None else h
    C = Cone(A)
    full, lam = height(C, h, gens)
    half = [tuple(Fraction(x, 2) for x in gens[0])] + gens[1:]
    scaled, slam = height(C, h, half)
    if not scaled > 1:
        raise CheckFailure("halving r^1 does not push the coefficient sum above 1", {"A": A, "h": h})
    return ScalingRefutation(full, tuple(lam), scaled, tuple(slam))
