from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from latcone.errors import CheckFailure
from latcone.instances import random_bounded_polytope, random_unimodular_polytope, rng_for
from latcone.lp import Polytope, UnboundedError, vertices
from latcone.widths import (
    face_dimension,
    facet_rows,
    facet_width,
    lattice_width,
    primitive_direction,
    width_in_direction,
    width_relation_report,
)

TRIANGLE = Polytope([[-1, 0], [0, -1], [1, 1]], [0, 0, 1])  # conv(0, e1, e2)


def _hull_width(verts, z):
    vals = [sum(a * b for a, b in zip(z, v)) for v in verts]
    return max(vals) - min(vals)


def test_triangle_widths():
    assert width_in_direction(TRIANGLE, (1, 0)) == 1
    assert width_in_direction(TRIANGLE, (1, -1)) == 2
    assert facet_width(TRIANGLE).width == 1
    rep = lattice_width(TRIANGLE, 2)
    assert rep.width == 1 and rep.direction == (0, 1) and not rep.exhaustive
    assert rep.radius == 2 and "upper bound" in rep.note


def test_thin_triangle_lattice_width_below_facet_width():
    # vertices (0,0), (2,1), (1,2): every facet normal gives 3, the lattice width is 2
    P = Polytope([[1, -2], [-2, 1], [1, 1]], [0, 0, 3])
    assert facet_width(P).width == 3
    assert lattice_width(P, 3).width == 2
    rel = width_relation_report(P, 3)
    assert rel.chain_ok and rel.delta == 3


def test_redundant_row_is_not_a_facet():
    P = Polytope([[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1]], [1, 0, 1, 0, 5])
    assert facet_rows(P) == [0, 1, 2, 3]
    assert face_dimension(P, [0, 2]) == 0
    assert face_dimension(P, [4]) == -1


def test_errors():
    with pytest.raises(ValueError):
        width_in_direction(TRIANGLE, (0, 0))
    half = Polytope([[-1, 0], [0, -1]], [0, 0])
    with pytest.raises(UnboundedError):
        width_in_direction(half, (1, 0))
    with pytest.raises(UnboundedError):
        lattice_width(Polytope([[-1, 0], [0, -1], [0, 1]], [0, 0, 1]))
    empty = Polytope([[1, 0], [-1, 0], [0, 1], [0, -1]], [0, -1, 1, 0])
    with pytest.raises(ValueError):
        width_in_direction(empty, (1, 0))
    with pytest.raises(ValueError):
        lattice_width(TRIANGLE, 0)


def test_unimodular_simplex_family():
    for n in (2, 3, 4):
        A = [[-int(i == j) for j in range(n)] for i in range(n)] + [[1] * n]
        S = Polytope(A, [0] * n + [n])
        assert lattice_width(S, 2).width == facet_width(S).width == n


@given(st.integers(0, 10 ** 6))
def test_lattice_width_against_direction_scan(seed):
    rng = rng_for(seed, 0, "width-prop")
    P = random_bounded_polytope(rng, 2, 3)
    if P is None:
        return
    verts = vertices(P)
    best = min(_hull_width(verts, z) for z in product(range(-3, 4), repeat=2) if any(z))
    assert lattice_width(P, 3).width == best
    rel = width_relation_report(P, 3)
    assert rel.lattice.width <= rel.facet.width <= rel.delta * rel.lattice.width


@given(st.integers(0, 10 ** 6))
def test_unimodular_widths_equal(seed):
    P = random_unimodular_polytope(rng_for(seed, 0, "uni-prop"), 2)
    rel = width_relation_report(P, 3)
    assert rel.delta == 1 and rel.lattice.width == rel.facet.width


def test_relation_report_raises_on_violation(monkeypatch):
    import latcone.widths as W

    fake = W.WidthReport(Fraction(5), (1, 0), "facet", True)
    monkeypatch.setattr(W, "facet_width", lambda P: fake)
    with pytest.raises(CheckFailure):
        W.width_relation_report(TRIANGLE, 2)


def test_primitive_direction():
    assert primitive_direction((2, -4)) == (1, -2)
    assert primitive_direction((0, 0)) == (0, 0)
