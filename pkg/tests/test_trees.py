import math

import pytest
from hypothesis import given, strategies as st

from natgroup.config import BoundExceeded
from natgroup.perm import generate
from natgroup.trees import (
    TreeFamily,
    ball_growth,
    family_generators,
    orbit_group_order,
    sphere_action,
    tree_generator,
    tree_word,
    verify_relations,
)


def grigorchuk_on_word(sym, word):
    """Direct recursive action on a binary word (tuple of digits, root first)."""
    if not word:
        return word
    head, tail = word[0], word[1:]
    if sym == "a":
        return (1 - head,) + tail
    sub = {"b": ("a", "c"), "c": ("a", "d"), "d": (None, "b")}[sym][head]
    return (head,) + (grigorchuk_on_word(sub, tail) if sub else tail)


def _digits(i, depth):
    return tuple((i >> (depth - 1 - k)) & 1 for k in range(depth))


def _index(word):
    return sum(d << (len(word) - 1 - k) for k, d in enumerate(word))


@pytest.mark.parametrize("sym", "abcd")
@pytest.mark.parametrize("depth", [1, 3, 6])
def test_grigorchuk_generators_match_direct_action(sym, depth):
    t = tree_generator("grigorchuk", sym, depth)
    for i in range(2 ** depth):
        assert t.perm[i] == _index(grigorchuk_on_word(sym, _digits(i, depth)))


@pytest.mark.parametrize("family", list(TreeFamily))
@pytest.mark.parametrize("depth", [1, 2, 4])
def test_generators_respect_levels(family, depth):
    for t in family_generators(family, depth, 3 if family is TreeFamily.ODOMETER else 2):
        assert t.respects_levels()


@given(st.sampled_from(["grigorchuk", "gupta-sidki", "ternary", "dyadic-dihedral"]),
       st.integers(1, 4), st.data())
def test_words_respect_levels_and_sphere_actions_compose(family, depth, data):
    letters = {"grigorchuk": "abcd", "gupta-sidki": "ab", "ternary": "STUJK", "dyadic-dihedral": "UVAB"}[family]
    word = data.draw(st.text(alphabet=letters, max_size=6))
    t = tree_word(family, word, depth)
    assert t.respects_levels()
    # the sphere action of a product is the product of sphere actions
    if len(word) >= 2:
        first, rest = tree_word(family, word[-1], depth), tree_word(family, word[:-1], depth)
        lvl = data.draw(st.integers(0, depth))
        lhs = sphere_action(first.then(rest), lvl)
        rhs = tuple(sphere_action(rest, lvl)[x] for x in sphere_action(first, lvl))
        assert tuple(lhs) == rhs


@pytest.mark.parametrize("family", ["grigorchuk", "gupta-sidki", "ternary", "dyadic-dihedral"])
@pytest.mark.parametrize("depth", [2, 5])
def test_required_relations_hold(family, depth):
    rels = verify_relations(family, depth)
    assert all(r.holds for r in rels if r.required)


def test_ternary_non_commutation_is_informational():
    rel = [r for r in verify_relations("ternary", 3) if r.name == "ST != TS"][0]
    assert rel.required is False


@pytest.mark.parametrize("p,depth", [(2, 5), (3, 3), (5, 2)])
def test_odometer_is_a_single_cycle(p, depth):
    t = tree_generator("odometer", "T", depth, p)
    assert t.order() == p ** depth
    assert t.perm.cycle_type() == (p ** depth,)
    assert all(r.holds for r in verify_relations("odometer", depth, p))


@pytest.mark.parametrize("family,depth,radius,sizes", [
    ("dyadic-dihedral", 8, 5, [1, 3, 5, 7, 9, 11]),
    ("grigorchuk", 8, 4, [1, 5, 11, 23, 40]),
    ("odometer", 6, 3, [1, 3, 5, 7]),
])
def test_ball_growth(family, depth, radius, sizes):
    assert ball_growth(family_generators(family, depth), radius).sizes == sizes


def test_ball_growth_bound():
    with pytest.raises(BoundExceeded):
        ball_growth(family_generators("grigorchuk", 6), 10, bound=50)


@pytest.mark.parametrize("depth", [1, 2, 3])
def test_gupta_sidki_quotients_are_3_groups(depth):
    gens = [t.perm for t in family_generators("gupta-sidki", depth)]
    size = orbit_group_order(gens)
    assert size == generate(gens).order
    assert 3 ** round(math.log(size, 3)) == size


def test_dyadic_level_group_is_dihedral():
    # A and B generate a dihedral group; AB acts as an odometer-like rotation
    gens = [t.perm for t in family_generators("dyadic-dihedral", 4)]
    size = orbit_group_order(gens)
    ab = tree_word("dyadic-dihedral", "AB", 4)
    assert size == 2 * ab.order()


def test_bad_inputs():
    with pytest.raises(ValueError):
        tree_generator("grigorchuk", "z", 3)
    with pytest.raises(ValueError):
        tree_generator("grigorchuk", "a", 0)
    with pytest.raises(ValueError):
        sphere_action(tree_generator("grigorchuk", "a", 2), 3)
