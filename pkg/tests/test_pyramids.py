from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from latcone.errors import CheckFailure
from latcone.instances import random_lattice_free_simplex, rng_for
from latcone.lp import integer_points, vertices
from latcone.pyramids import (
    NotLatticeFreeError,
    PyramidError,
    build_pyramid,
    corollary28_classify,
    facet_width_a,
    generate_sg,
    pyramid_bound_report,
    require_lattice_free,
    simplex_flat_direction,
    simplex_from_rows,
    simplex_width_check,
)


def _width_by_vertices(P, z):
    vals = [sum(a * b for a, b in zip(z, v)) for v in vertices(P)]
    return max(vals) - min(vals)


@pytest.mark.parametrize("s", range(2, 13))
def test_sg_cyclic_is_tight(s):
    P = generate_sg((s,))
    assert integer_points(P.polytope()) == []
    rep = pyramid_bound_report(P)
    assert rep.w_a == s - 2 == rep.bound_eq4 == rep.bound_eq5
    assert rep.tight and rep.tight_bfs and rep.group == (s,)
    assert rep.diam == rep.diam_formula == s - 1
    assert "non_tight_vs_formula" not in rep.flags


@pytest.mark.parametrize("factors,w,diam,formula", [
    ((2, 2), 1, 2, 3),
    ((2, 4), 3, 4, 5),
    ((2, 2, 2), 2, 3, 5),
])
def test_sg_noncyclic_formula_gap(factors, w, diam, formula):
    rep = pyramid_bound_report(generate_sg(factors))
    assert (rep.w_a, rep.diam, rep.diam_formula) == (w, diam, formula)
    # tight with the definitional diameter, not with the closed formula
    assert rep.tight_bfs and not rep.tight
    assert {"non_tight_vs_formula", "formula_vs_bfs_discrepancy"} <= set(rep.flags)


def test_sg_width_by_vertices():
    for f in [(3,), (5,), (2, 4)]:
        P = generate_sg(f)
        assert facet_width_a(P) == _width_by_vertices(P.polytope(), P.a)


def test_sg_rejects_bad_chain():
    with pytest.raises(ValueError):
        generate_sg((2, 3))
    with pytest.raises(ValueError):
        generate_sg((1,))


def test_build_errors():
    I2 = [[1, 0], [0, 1]]
    with pytest.raises(PyramidError) as e:
        build_pyramid(I2, [1, 1], [0, 0], 3)
    assert e.value.reason == "dual"
    with pytest.raises(PyramidError) as e:
        build_pyramid(I2, [-1, -1], [0, 0], -1)
    assert e.value.reason == "b_a"
    with pytest.raises(PyramidError) as e:
        build_pyramid(I2, [-1, -1], [0], 1)
    assert e.value.reason == "shape"
    with pytest.raises(PyramidError) as e:
        build_pyramid([[1, 1], [2, 2]], [-1, -1], [0, 0], 1)
    assert e.value.reason == "rank"
    with pytest.raises(PyramidError) as e:
        build_pyramid(I2, [Fraction(-1, 2), -1], [0, 0], 1)
    assert e.value.reason == "integrality"
    with pytest.raises(PyramidError) as e:
        build_pyramid([[1, 0], [0, 1], [1, 1]], [-1, -1], [0, 0, 1], 1)
    assert e.value.reason == "apex"


def test_not_lattice_free():
    P = build_pyramid([[1, 0], [0, 1]], [-1, -1], [0, 0], 1)
    assert P.bounded and P.v == (0, 0)
    with pytest.raises(NotLatticeFreeError) as e:
        require_lattice_free(P)
    assert P.polytope().contains(e.value.witness)
    with pytest.raises(NotLatticeFreeError):
        pyramid_bound_report(P)


def test_unbounded_pyramid_detected():
    # -a on the boundary of the dual: the pyramid is a half-strip
    P = build_pyramid([[1, 0], [0, 1]], [-1, 0], [0, 0], 2)
    assert not P.bounded


def test_flat_direction_example():
    # A = [[2, 1], [0, 1]]: one non-trivial coset, d = (A_1 + A_2) / 2 = (1, 1)
    P = build_pyramid([[2, 1], [0, 1]], [-1, -1], [0, 0], 1)
    assert simplex_flat_direction(P) == (1, 1)


def test_simplex_from_rows_uses_smallest_minor():
    # the minors are 2, -1, 1; the lexicographically first subset with |det| = 1 is rows (0, 2)
    P = simplex_from_rows([[2, 1], [0, 1], [-1, -1]], [1, 0, 0])
    assert P.A == ((2, 1), (-1, -1)) and P.a == (0, 1)
    with pytest.raises(ValueError):
        simplex_from_rows([[1, 0], [0, 1]], [0, 0])


@given(st.integers(0, 10 ** 6))
def test_simplex_checks_on_random_instances(seed):
    P = random_lattice_free_simplex(rng_for(seed, 0, "simplex-prop"), 2, 6)
    if P is None:
        return
    rep = simplex_width_check(P, 4)
    assert rep.facet_width < rep.diam <= rep.delta - 1
    assert rep.lattice_width < rep.delta // 2
    Q = P.polytope()
    assert rep.lattice_width == _width_by_vertices(Q, rep.direction)
    if rep.flat_direction is not None:
        assert _width_by_vertices(Q, rep.flat_direction) == rep.flat_width < 1 - Fraction(1, rep.delta)


def test_corollary28_classes():
    assert corollary28_classify(generate_sg((3,))) == "prime_delta"
    assert corollary28_classify(generate_sg((2, 2))) == "half_delta_minors"
    # square A has the single minor det A, so any even Delta counts as "half"
    assert corollary28_classify(generate_sg((6,))) == "half_delta_minors"
    # minors 1, 1, -4: Delta = 4 and 1 is not in {0, 2, 4}
    P = build_pyramid([[1, 0], [0, 1], [4, 1]], [-1, -1], [0, 0, 0], 1)
    assert corollary28_classify(P) == "unclassified"


def test_pyramid_report_raises_when_bound_fails(monkeypatch):
    import latcone.pyramids as pm

    monkeypatch.setattr(pm, "facet_width_a", lambda P: Fraction(100))
    with pytest.raises(CheckFailure):
        pm.pyramid_bound_report(generate_sg((3,)))
