from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import cofactor_det
from strategies import rectangular, square

from latcone.exact import (
    adjugate,
    delta,
    determinant,
    gcd_of_minors,
    hermite_normal_form,
    identity,
    is_unimodular,
    kernel,
    matmul,
    matvec,
    minor_stats,
    primitive,
    rank,
    rat_determinant,
    rat_inverse,
    smith_normal_form,
    solve,
    submatrix,
)


def test_determinant_known():
    assert determinant([[2, 1], [0, 1]]) == 2
    assert determinant([[0, 1], [1, 0]]) == -1
    assert determinant([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == 0
    assert determinant([[10 ** 30, 1], [1, 10 ** 30]]) == 10 ** 60 - 1


def test_determinant_rejects_non_square():
    with pytest.raises(ValueError):
        determinant([[1, 2]])


@given(square())
def test_bareiss_matches_cofactor(M):
    assert determinant(M) == cofactor_det(M)


@given(square(max_n=4))
def test_adjugate_identity(M):
    d = determinant(M)
    n = len(M)
    assert matmul(M, adjugate(M)) == [[d * (i == j) for j in range(n)] for i in range(n)]


@given(square(max_n=3))
def test_rational_inverse(M):
    if determinant(M) == 0:
        return
    inv = rat_inverse(M)
    assert matmul(M, inv) == identity(len(M))
    assert rat_determinant(inv) == Fraction(1, determinant(M))


@given(rectangular())
def test_hnf_shape_and_unimodularity(M):
    H, U = hermite_normal_form(M)
    assert is_unimodular(U)
    assert matmul(M, U) == H
    # echelon: pivot row indices strictly increase, pivots positive, reduced to their left
    last = -1
    for j in range(len(H[0])):
        col = [H[i][j] for i in range(len(H))]
        nz = [i for i, v in enumerate(col) if v]
        if not nz:
            continue
        p = nz[0]
        assert p > last and H[p][j] > 0
        assert all(0 <= H[p][k] < H[p][j] for k in range(j))
        last = p


def test_hnf_unique_on_lattice_basis():
    # two bases of the same lattice give the same form
    B = [[2, 1], [0, 3]]
    Bp = matmul(B, [[1, 1], [0, 1]])
    assert hermite_normal_form(B)[0] == hermite_normal_form(Bp)[0]


@given(rectangular())
def test_snf_chain(M):
    D, U, V = smith_normal_form(M)
    assert is_unimodular(U) and is_unimodular(V)
    assert matmul(matmul(U, M), V) == D
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) or (a != 0 and b % a == 0)
    # product of invariant factors = gcd of maximal minors (when of full rank)
    k = min(len(M), len(M[0]))
    prod = 1
    for d in diag:
        prod *= d
    assert prod == gcd_of_minors(M, k)


@given(rectangular())
def test_rank_and_kernel(M):
    K = kernel(M)
    assert rank(M) + len(K) == len(M[0])
    for v in K:
        assert all(x == 0 for x in matvec(M, v))


def test_solve_and_submatrix():
    A = [[2, 1], [1, 3]]
    assert solve(A, [3, 4]) == [Fraction(1), Fraction(1)]
    assert submatrix([[1, 2], [3, 4], [5, 6]], [0, 2]) == [[1, 2], [5, 6]]


def test_minors_and_delta():
    A = [[1, 0], [0, 1], [1, 2]]
    s = minor_stats(A)
    assert (s.delta_max, s.delta_min, s.gcd_minors, s.rank) == (2, 1, 1, 2)
    assert delta(A) == 2
    assert gcd_of_minors([[2, 0], [0, 2], [2, 2]]) == 4
    with pytest.raises(ValueError):
        minor_stats([[1, 2, 3]])


@given(rectangular(max_m=5, max_n=3))
def test_gcd_of_minors_by_enumeration(M):
    m, n = len(M), len(M[0])
    k = min(m, n)
    g = 0
    for r in combinations(range(m), k):
        for c in combinations(range(n), k):
            g = gcd(g, cofactor_det([[M[i][j] for j in c] for i in r]))
    assert gcd_of_minors(M) == g


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=4))
def test_primitive(v):
    if not any(v):
        with pytest.raises(ValueError):
            primitive(v)
        return
    g = gcd(*v)
    assert primitive(v) == [x // g for x in v]
    assert gcd(*primitive(v)) == 1
