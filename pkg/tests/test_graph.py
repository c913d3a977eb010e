import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from natgroup.graph import (
    BallFamily,
    WeightedGraph,
    barycentric_refinement,
    cayley_ball,
    cayley_graph,
    cliques,
    complement,
    connection_graph,
    disjoint_union,
    geodesic_metric,
    graph_automorphisms,
    graph_isomorphism,
    join,
    maximal_cliques,
    named_graph,
    product,
    product_generators,
    to_dot,
    zigzag_cayley,
)
from natgroup.group import cyclic, direct_product, named_group

import oracles


@pytest.mark.parametrize("spec,n,m", [
    ("C5", 5, 5), ("K4", 4, 6), ("P3", 3, 0), ("K33", 6, 9), ("K2,3", 5, 6), ("prism(4)", 8, 12),
    ("octahedron", 6, 12), ("cube(3)", 8, 12), ("tetrahedron", 4, 6), ("icosahedron", 12, 30),
    ("trunctet", 12, 18), ("truncicosa", 60, 90),
])
def test_named_graph_sizes(spec, n, m):
    g = named_graph(spec)
    assert (g.n, g.edge_count) == (n, m)


def test_unknown_graph():
    with pytest.raises(ValueError):
        named_graph("dodecahedron-ish")


@pytest.mark.parametrize("spec", ["trunctet", "truncicosa"])
def test_truncated_solids_are_cubic(spec):
    assert set(named_graph(spec).degrees()) == {3}


@pytest.mark.parametrize("spec,count", [("trunctet", 24), ("octahedron", 48), ("C6", 12), ("cube(3)", 48), ("K33", 72)])
def test_automorphism_counts_match_networkx(spec, count):
    g = named_graph(spec)
    assert graph_automorphisms(g).order == count == oracles.nx_automorphism_count(g)


def test_geodesic_metric_weighted():
    g = WeightedGraph(3, {(0, 1): Fraction(1, 2), (1, 2): 1, (0, 2): 2})
    m = geodesic_metric(g)
    assert m.dist[0][2] == Fraction(3, 2)
    with pytest.raises(ValueError):
        geodesic_metric(named_graph("P2"))


@st.composite
def random_graphs(draw, n_max=7):
    n = draw(st.integers(1, n_max))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return WeightedGraph(n, chosen)


@given(random_graphs())
def test_complement_is_an_involution_with_same_symmetry(g):
    c = complement(g)
    assert complement(c) == g
    assert c.edge_count + g.edge_count == g.n * (g.n - 1) // 2
    assert graph_automorphisms(c).order == graph_automorphisms(g).order == oracles.nx_automorphism_count(g)


@given(random_graphs(), st.randoms(use_true_random=False))
def test_isomorphism_agrees_with_networkx(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    assert graph_isomorphism(g, h) is not None
    other = complement(h)
    assert (graph_isomorphism(g, other) is not None) == oracles.nx_isomorphic(g, other)


@given(random_graphs())
def test_cliques_match_networkx(g):
    ours = sorted(tuple(sorted(c)) for c in cliques(g))
    assert ours == sorted(oracles.nx_cliques(g))
    for c in maximal_cliques(g):
        assert all(g.has_edge(u, v) for u, v in itertools.combinations(c, 2))


def test_join_and_union():
    j = join(named_graph("P2"), named_graph("P3"))
    assert j.edge_count == 6 and oracles.nx_isomorphic(j, named_graph("K2,3"))
    u = disjoint_union(named_graph("K3"), named_graph("K2"))
    assert u.n == 5 and u.edge_count == 4 and not u.is_connected()


@pytest.mark.parametrize("kind,edges", [("shannon", 15), ("tensor", 6), ("cartesian", 9), ("lexicographic", 15)])
def test_product_edge_counts_for_k2_by_k3(kind, edges):
    g = product(named_graph("K2"), named_graph("K3"), kind)
    assert g.n == 6 and g.edge_count == edges


def test_product_weights_add_displacements():
    a = WeightedGraph(2, {(0, 1): 2})
    b = WeightedGraph(2, {(0, 1): 3})
    s = product(a, b, "shannon")
    assert s.weight(0, 3) == 5 and s.weight(0, 1) == 3 and s.weight(0, 2) == 2


def test_cayley_of_product_is_shannon_product():
    a, b = cyclic(4), cyclic(3)
    g = cayley_graph(direct_product(a, b), product_generators(a, [1], b, [1]))
    h = product(cayley_graph(a, [1]), cayley_graph(b, [1]), "shannon")
    assert graph_isomorphism(g, h) is not None
    assert oracles.nx_isomorphic(g, h)


def test_cayley_graph_validation():
    z6 = cyclic(6)
    assert oracles.nx_isomorphic(cayley_graph(z6, [1]), named_graph("C6"))
    with pytest.raises(ValueError):
        cayley_graph(z6, [2])
    with pytest.raises(ValueError):
        cayley_graph(z6, [1], weights={1: 1, 5: 2})


def test_zigzag_ts_on_dihedral():
    g = zigzag_cayley(cyclic(3), [1], cyclic(2), [1], {1: [0, 2, 1]}, "ts")
    assert g.n == 6 and g.is_connected()


@pytest.mark.parametrize("family,radius,rank,size", [
    ("D_INF", 3, 2, 7), ("FREE", 2, 2, 17), ("FREE_DIHEDRAL", 2, 3, 10), ("PSL2Z", 3, 2, 14), ("Z", 3, 2, 7),
])
def test_ball_sizes(family, radius, rank, size):
    g = cayley_ball(family, radius, rank)
    assert g.n == size and g.is_connected()


def test_free_ball_is_a_tree():
    g = cayley_ball(BallFamily.FREE, 3, 2)
    assert g.edge_count == g.n - 1


def test_connection_and_barycentric_of_triangle():
    k3 = named_graph("K3")
    conn = connection_graph(k3)
    bary = barycentric_refinement(k3)
    assert conn.n == bary.n == 7
    # 21 pairs of faces minus 3 vertex pairs and 3 vertex/opposite-edge pairs
    assert conn.edge_count == 15
    # 6 vertex-edge, 3 vertex-triangle, 3 edge-triangle
    assert bary.edge_count == 12


@given(random_graphs(5))
def test_barycentric_refinement_grows(g):
    b = barycentric_refinement(g)
    assert b.n == len(cliques(g)) >= g.n
    assert len(cliques(b)) >= len(cliques(g))


def test_to_dot():
    dot = to_dot(WeightedGraph(2, {(0, 1): Fraction(1, 2)}, name="pair"))
    assert dot.startswith('graph "pair" {')
    assert '0 -- 1 [label="1/2"];' in dot


def test_named_group_cayley_octahedron():
    # the octahedron is a Cayley graph of Z6 with generators 1, 2
    g = cayley_graph(named_group("Z6"), [1, 2])
    assert oracles.nx_isomorphic(g, named_graph("octahedron"))
