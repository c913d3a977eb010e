import itertools
import math

import pytest
from hypothesis import given, strategies as st

from natgroup.config import BoundExceeded
from natgroup.perm import PermGroup, Permutation, compose, generate, inverse, order, power, regular_subgroups
from natgroup.search import automorphism_generators, automorphisms, find_isomorphism


def perms(n_min=1, n_max=8):
    return st.integers(n_min, n_max).flatmap(lambda n: st.permutations(range(n)).map(Permutation))


def perm_pairs(n_max=8):
    return st.integers(1, n_max).flatmap(
        lambda n: st.tuples(st.permutations(range(n)), st.permutations(range(n))))


def test_compose_applies_left_argument_first():
    p = Permutation([1, 2, 0])
    q = Permutation([0, 2, 1])
    assert compose(p, q) == (2, 1, 0)  # 0 -> 1 -> 2
    assert (p * q) == compose(p, q)


def test_rejects_non_permutations():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])


def test_cycles_and_sign():
    p = Permutation.from_cycles(5, [(0, 1, 2), (3, 4)])
    assert p.cycle_type() == (2, 3)
    assert p.sign() == -1
    assert p.cycle_string() == "(0 1 2)(3 4)"


@given(perms())
def test_order_is_lcm_of_cycles_and_matches_iteration(p):
    k, q = 1, p
    while not q.is_identity():
        q = compose(q, p)
        k += 1
    assert order(p) == k == math.lcm(*p.cycle_type())


@given(perms())
def test_inverse_and_powers(p):
    assert compose(p, inverse(p)).is_identity()
    assert power(p, order(p)).is_identity()
    assert power(p, -1) == inverse(p)


@given(perm_pairs())
def test_closure_contains_products_and_lagrange(pair):
    a, b = map(Permutation, pair)
    g = generate([a, b])
    elems = g.elements
    for x in list(elems)[:20]:
        for y in list(elems)[:20]:
            assert compose(x, y) in elems
    assert math.factorial(len(a)) % g.order == 0
    for orbit in g.orbits():
        assert g.order % len(orbit) == 0


def test_symmetric_group_order():
    g = generate([Permutation([1, 2, 3, 4, 0]), Permutation([1, 0, 2, 3, 4])])
    assert g.order == 120 and g.is_transitive()


def test_order_bound_raises():
    with pytest.raises(BoundExceeded):
        generate([Permutation([1, 2, 3, 4, 5, 0]), Permutation([1, 0, 2, 3, 4, 5])], bound=100)


def _brute_regular_subgroups(group):
    """Subsets of size n that are closed and act regularly, found from all elements."""
    n = group.degree
    elems = group.sorted_elements()
    found = set()
    for subset in itertools.combinations(elems, n):
        s = set(subset)
        if Permutation.identity(n) not in s:
            continue
        if {p[0] for p in s} != set(range(n)):
            continue
        if all(compose(x, y) in s for x in s for y in s):
            found.add(frozenset(s))
    return found


@pytest.mark.parametrize("gens", [
    [[1, 2, 3, 0], [3, 2, 1, 0]],                       # D4 on a square
    [[1, 2, 3, 0], [1, 0, 2, 3]],                       # S4
    [[1, 2, 3, 4, 5, 0], [5, 4, 3, 2, 1, 0]],           # D6 on a hexagon
])
def test_regular_subgroups_match_brute_force(gens):
    g = generate([Permutation(x) for x in gens])
    engine = {frozenset(h.elements) for h in regular_subgroups(g)}
    assert engine == _brute_regular_subgroups(g)


def test_regular_subgroups_need_lagrange():
    g = PermGroup([Permutation([1, 0, 2])])
    assert regular_subgroups(g) == []


def _cycle_matrix(n):
    return [[0 if i == j else (1 if (i - j) % n in (1, n - 1) else 2) for j in range(n)] for i in range(n)]


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_automorphism_generators_of_cycles(n):
    gens, size = automorphism_generators(_cycle_matrix(n))
    assert size == 2 * n
    assert generate(gens).order == 2 * n
    assert len(automorphisms(_cycle_matrix(n))) == 2 * n


@given(st.integers(2, 7).flatmap(lambda n: st.permutations(range(n))))
def test_isomorphism_search_recovers_relabeling(images):
    n = len(images)
    a = [[(i * j + i + j) % 3 if i != j else 5 for j in range(n)] for i in range(n)]
    a = [[a[min(i, j)][max(i, j)] for j in range(n)] for i in range(n)]
    b = [[a[images.index(i)][images.index(j)] for j in range(n)] for i in range(n)]
    p = find_isomorphism(a, b)
    assert p is not None
    assert all(b[p[i]][p[j]] == a[i][j] for i in range(n) for j in range(n))
