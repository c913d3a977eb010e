import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from natgroup.graph import WeightedGraph, cycle, graph_automorphisms, named_graph
from natgroup.homology import (
    ChainComplex,
    betti,
    betti_from_laplacian,
    clique_complex,
    euler_characteristic,
    f_function,
    gauss_bonnet_curvature,
    homology_report,
    lefschetz_group_audit,
    lefschetz_number,
)
from natgroup.perm import Permutation, compose, inverse


@st.composite
def random_graphs(draw, n_max=7):
    n = draw(st.integers(1, n_max))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return WeightedGraph(n, chosen)


def numpy_betti(c: ChainComplex) -> list[int]:
    """Betti numbers from floating-point ranks of dense boundary matrices."""
    ranks = [0] * (c.dimension + 2)
    for k in range(1, c.dimension + 1):
        m = np.array(c.boundary_matrix(k), dtype=float)
        ranks[k] = int(np.linalg.matrix_rank(m)) if m.size else 0
    return [c.f_vector[k] - ranks[k] - ranks[k + 1] for k in range(c.dimension + 1)]


@pytest.mark.parametrize("spec,expected", [
    ("K1", [1]), ("C5", [1, 1]), ("K4", [1, 0, 0, 0]), ("octahedron", [1, 0, 1]),
    ("icosahedron", [1, 0, 1]), ("P3", [3]), ("cube(3)", [1, 5]), ("trunctet", [1, 3, 0]),
])
def test_known_betti_numbers(spec, expected):
    assert betti(clique_complex(named_graph(spec))) == expected


@given(random_graphs())
def test_boundary_squares_to_zero(g):
    c = clique_complex(g)
    for k in range(2, c.dimension + 1):
        a = np.array(c.boundary_matrix(k - 1)) @ np.array(c.boundary_matrix(k))
        assert not a.any()


@given(random_graphs())
def test_betti_agrees_with_numpy_and_laplacian(g):
    c = clique_complex(g)
    b = betti(c)
    assert b == numpy_betti(c) == betti_from_laplacian(c)
    assert sum((-1) ** k * x for k, x in enumerate(b)) == euler_characteristic(c)


@given(random_graphs())
def test_gauss_bonnet(g):
    c = clique_complex(g)
    assert sum(gauss_bonnet_curvature(c)) == euler_characteristic(c)


def test_curvature_of_octahedron_is_uniform():
    curv = gauss_bonnet_curvature(clique_complex(named_graph("octahedron")))
    assert curv == [Fraction(1, 3)] * 6


def test_f_function_prepends_one():
    assert f_function(clique_complex(named_graph("K3"))) == [1, 3, 3, 1]


def test_complex_validation():
    with pytest.raises(ValueError):
        ChainComplex([(0, 1)])          # missing faces
    with pytest.raises(ValueError):
        ChainComplex([(1, 0)])


def test_lefschetz_identity_is_euler():
    for spec in ("C5", "octahedron", "K4", "trunctet"):
        c = clique_complex(named_graph(spec))
        res = lefschetz_number(c, list(range(c.f_vector[0])))
        assert res.agree and res.cohomological == euler_characteristic(c)


def test_lefschetz_rotation_of_cycle_has_no_fixed_points():
    c = clique_complex(cycle(5))
    res = lefschetz_number(c, [1, 2, 3, 4, 0])
    assert res.fixed_point == 0 == res.cohomological


def test_lefschetz_reflection_of_cycle():
    # reflection of C4 fixing vertices 0, 2: two fixed vertices, no fixed edge
    c = clique_complex(cycle(4))
    res = lefschetz_number(c, [0, 3, 2, 1])
    assert res.cohomological == res.fixed_point == 2


@given(st.sampled_from(["C6", "octahedron", "cube(3)", "K33"]), st.data())
def test_lefschetz_is_a_conjugation_invariant(spec, data):
    g = named_graph(spec)
    elems = graph_automorphisms(g).sorted_elements()
    t = Permutation(data.draw(st.sampled_from(elems)))
    h = Permutation(data.draw(st.sampled_from(elems)))
    c = clique_complex(g)
    conj = compose(compose(inverse(h), t), h)
    a, b = lefschetz_number(c, t), lefschetz_number(c, conj)
    assert a.agree and b.agree
    assert a.cohomological == b.cohomological


def test_group_audit_on_pentagon():
    # rotations contribute 0; each reflection fixes a vertex and flips an edge, giving 2
    audit = lefschetz_group_audit(cycle(5), graph_automorphisms(cycle(5)))
    assert audit["theorem_ok"] and audit["group_order"] == 10
    assert audit["total"] == 10 and audit["average"] == "1"


def test_homology_report_keys():
    rep = homology_report(named_graph("octahedron"))
    assert rep["betti"] == [1, 0, 1] and rep["euler"] == 2
    assert rep["f_vector"] == [6, 12, 8]
