from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from strategies import matrices

from latcone.exact import gcd_of_minors, matvec, rank, smith_normal_form
from latcone.groups import (
    AbelianGroup,
    abelian_groups,
    cyclic,
    diam_bfs,
    diam_formula,
    diam_upper_bound,
    diam_with_generators,
    diameter,
    phi_j,
    phi_j_bruteforce,
    quotient,
    quotient_group,
    rhs_lattice,
)


def _diam_by_sums(G, H):
    """Smallest k with every element a sum of at most k members of H (0 for k = 0)."""
    zero = tuple(0 for _ in G.invariant_factors)
    reached, k = {zero}, 0
    while len(reached) < G.order:
        k += 1
        new = {G.add(x, h) for x in reached for h in H} | reached
        if new == reached:
            return None
        reached = new
    return k


def _max_diam_oracle(G):
    els = [e for e in G.elements() if any(e)]
    best = 0
    for r in range(1, len(els) + 1):
        for H in combinations(els, r):
            d = _diam_by_sums(G, H)
            if d is not None:
                best = max(best, d)
    return best


@pytest.mark.parametrize("factors", [(2,), (3,), (4,), (5,), (6,), (2, 2), (2, 4), (3, 3), (2, 2, 2)])
def test_bfs_matches_sum_enumeration(factors):
    G = AbelianGroup(factors)
    assert diam_bfs(G) == _max_diam_oracle(G)


def test_definitional_diameter_of_products():
    # maximum over generating sets equals sum(s_i - 1); the closed formula adds N - 1 on top
    for f in [(2, 2), (2, 4), (3, 3), (2, 2, 2), (2, 6), (2, 2, 4), (4, 4), (2, 2, 2, 2)]:
        G = AbelianGroup(f)
        assert diam_bfs(G) == sum(s - 1 for s in f)
        assert diam_formula(G) - diam_bfs(G) == len(f) - 1


def test_cyclic_agreement():
    for d in range(1, 13):
        G = cyclic(d)
        assert diam_bfs(G) == diam_formula(G) == max(d - 1, 0)


def test_diameter_source_switch():
    assert diameter(AbelianGroup((2, 2))) == (2, "bfs")
    assert diameter(AbelianGroup((2, 2, 2, 2, 2))) == (9, "formula")
    with pytest.raises(ValueError):
        diam_bfs(AbelianGroup((17,)))


def test_diam_with_generators():
    G = cyclic(7)
    assert diam_with_generators(G, [(1,)]) == 6
    assert diam_with_generators(G, [(1,), (6,)]) == 3
    with pytest.raises(ValueError):
        diam_with_generators(AbelianGroup((2, 2)), [(1, 0)])


def test_group_validation():
    with pytest.raises(ValueError):
        AbelianGroup((2, 3))
    with pytest.raises(ValueError):
        AbelianGroup((1, 2))
    assert [g.invariant_factors for g in abelian_groups(8)] == [(2, 2, 2), (2, 4), (8,)]
    assert [g.invariant_factors for g in abelian_groups(12)] == [(2, 6), (12,)]


def test_upper_bound():
    for order in range(2, 17):
        for G in abelian_groups(order):
            assert diam_bfs(G) <= diam_upper_bound(order, G.rank)
    with pytest.raises(ValueError):
        diam_upper_bound(4, 3)


@pytest.mark.parametrize("d", range(3, 11))
def test_phi_j(d):
    for j in range(2, d):
        assert phi_j(d, j) == phi_j_bruteforce(d, j)
    assert phi_j(d, d // 2 + 1) == 2
    assert phi_j(d, d - 1) == 2


def test_phi_j_domain():
    with pytest.raises(ValueError):
        phi_j(5, 1)
    with pytest.raises(ValueError):
        phi_j_bruteforce(13, 2)


@st.composite
def full_rank(draw):
    n = draw(st.integers(1, 3))
    m = draw(st.integers(n, n + 2))
    A = draw(matrices(m, n, st.integers(-3, 3)))
    assume(rank(A) == n)
    return A


@given(full_rank())
def test_rhs_lattice_against_box_count(A):
    L = rhs_lattice(A)
    n = len(A[0])
    assert L.det * gcd_of_minors(A) == 1
    for j in range(n):
        col = [L.basis[i][j] for i in range(n)]
        assert all(v.denominator == 1 for v in matvec(A, col))
    # points with A x integral in the unit cube [0,1)^n, found on the grid of step 1/g
    g = gcd_of_minors(A)
    if g ** n > 4096:
        return
    count = sum(
        1 for k in product(range(g), repeat=n)
        if all(v.denominator == 1 for v in matvec(A, [Fraction(x, g) for x in k]))
    )
    assert count == g


@given(full_rank())
def test_quotient_is_smith_cokernel(A):
    G = quotient_group(rhs_lattice(A))
    D, _, _ = smith_normal_form(A)
    n = len(A[0])
    assert G.invariant_factors == tuple(D[i][i] for i in range(n) if D[i][i] > 1)


def test_quotient_coset_map():
    A = [[2, 0], [0, 4]]
    Q = quotient(rhs_lattice(A))
    assert Q.group.invariant_factors == (2, 4)
    a, b = (Fraction(1, 2), 0), (0, Fraction(1, 4))
    s = tuple(x + y for x, y in zip(a, b))
    assert Q.coset(s) == Q.group.add(Q.coset(a), Q.coset(b))
    assert Q.coset((1, 1)) == (0, 0)
    cosets = {Q.coset((Fraction(i, 2), Fraction(j, 4))) for i in range(2) for j in range(4)}
    assert len(cosets) == 8
    with pytest.raises(ValueError):
        Q.coset((Fraction(1, 3), 0))
    with pytest.raises(ValueError):
        rhs_lattice([[1, 1], [2, 2]])
