from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import box_points

from latcone.exact import rank, solve, submatrix
from latcone.lp import Polytope, UnboundedError, integer_points, is_bounded, is_lattice_free, optimize, vertices

R = 3


@st.composite
def boxed(draw, max_n=3):
    """Random rows intersected with the box [-R, R]^n so the polytope is bounded."""
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(0, 3))
    rows = draw(st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=k, max_size=k))
    rhs = draw(st.lists(st.integers(-4, 6), min_size=k, max_size=k))
    A, b = [], []
    for i in range(n):
        e = [int(i == j) for j in range(n)]
        A += [e, [-x for x in e]]
        b += [R, R]
    return Polytope(A + rows, b + rhs)


def _vertex_oracle(P):
    best = set()
    for I in combinations(range(P.m), P.n):
        sub = submatrix(P.A, I)
        if rank(sub) < P.n:
            continue
        x = tuple(solve(sub, [P.b[i] for i in I]))
        if P.contains(x):
            best.add(x)
    return best


@given(boxed(), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_optimum_is_attained_at_a_vertex(P, c):
    c = c[: P.n]
    out = optimize(P, c, "max")
    verts = _vertex_oracle(P)
    if not verts:
        assert out.status == "infeasible"
        return
    assert out.status == "optimal"
    assert P.contains(out.point)
    assert out.value == max(sum(ci * v for ci, v in zip(c, x)) for x in verts)
    lo = optimize(P, c, "min")
    assert lo.value == min(sum(ci * v for ci, v in zip(c, x)) for x in verts)


@given(boxed())
def test_integer_points_match_scan(P):
    assert integer_points(P) == box_points(P.A, P.b, R)
    free, witness = is_lattice_free(P)
    assert free == (not box_points(P.A, P.b, R))
    if witness is not None:
        assert P.contains(witness)


@given(boxed())
def test_vertices_match_oracle(P):
    assert set(vertices(P)) == _vertex_oracle(P)


def test_unbounded_and_infeasible():
    half = Polytope([[-1, 0], [0, -1]], [0, 0])
    out = optimize(half, [1, 1])
    assert out.status == "unbounded" and out.ray is not None
    assert all(v >= 0 for v in out.ray) and sum(out.ray) > 0
    assert not is_bounded(half)
    with pytest.raises(UnboundedError):
        integer_points(half)
    empty = Polytope([[1], [-1]], [0, -1])
    assert optimize(empty, [1]).status == "infeasible"
    assert is_bounded(empty) and integer_points(empty) == []


def test_fractional_rhs_and_from_rational():
    P = Polytope([[2], [-2]], [Fraction(3), Fraction(-1)])
    assert integer_points(P) == [(1,)]
    Q = Polytope.from_rational([[Fraction(1, 2), Fraction(1, 3)]], [1])
    assert Q.A == ((3, 2),) and Q.b == (Fraction(6),)
    opt = optimize(Polytope([[1, 1], [-1, 0], [0, -1]], [Fraction(5, 2), 0, 0]), [1, 0])
    assert opt.value == Fraction(5, 2) and opt.point == (Fraction(5, 2), 0)


def test_degenerate_cycling_instance():
    # a classic degenerate LP on which Dantzig's rule cycles; Bland's rule must terminate
    A = [[Fraction(1, 4), -8, -1, 9], [Fraction(1, 2), -12, Fraction(-1, 2), 3], [0, 0, 1, 0],
         [-1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]
    b = [0, 0, 1, 0, 0, 0, 0]
    out = optimize(Polytope.from_rational(A, b), [Fraction(3, 4), -20, Fraction(1, 2), -6])
    assert out.status == "optimal" and out.value == Fraction(5, 4)


def test_shape_mismatch():
    with pytest.raises(ValueError):
        Polytope([[1, 0]], [1, 2])
