"""Self-similar automorphisms of rooted trees, truncated at finite depth.

A generator is a rule on the p subtrees of the root: output branch i
receives input branch j, transformed by some generator (or untouched).
Unrolling the rule to depth n gives a permutation of the p^n leaves.  Leaf
indices are base-p strings read most significant digit first, so the first
digit names the top-level branch.

Rules read like nested-list rewrites: the odometer {X, Y} -> {Y, T[X]} is
``[(1, None), (0, "T")]``.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from . import config
from .config import BoundExceeded
from .perm import Permutation, compose, inverse, order


class TreeFamily(enum.Enum):
    ODOMETER = "odometer"
    DYADIC_DIHEDRAL = "dyadic-dihedral"
    TERNARY_STUJ = "ternary"
    GRIGORCHUK = "grigorchuk"
    GUPTA_SIDKI = "gupta-sidki"


# rule: list of (source branch, generator applied to it or None); "~x" is x inverse
_RULES: dict[TreeFamily, dict[str, list]] = {
    TreeFamily.DYADIC_DIHEDRAL: {
        "U": [(1, None), (0, "U")],
        "V": [(1, "V"), (0, None)],
        "A": [(1, None), (0, None)],
        "B": [(1, "V"), (0, "U")],
    },
    TreeFamily.TERNARY_STUJ: {
        "T": [(1, "T"), (2, None), (0, None)],
        "S": [(1, None), (2, "S"), (0, None)],
        "U": [(1, None), (2, None), (0, "U")],
        "J": [(1, "J"), (2, "J"), (0, "J")],
        "K": [(2, "K"), (0, "K"), (1, "K")],
    },
    TreeFamily.GRIGORCHUK: {
        "a": [(1, None), (0, None)],
        "b": [(0, "a"), (1, "c")],
        "c": [(0, "a"), (1, "d")],
        "d": [(0, None), (1, "b")],
    },
    TreeFamily.GUPTA_SIDKI: {
        "a": [(1, None), (2, None), (0, None)],
        "b": [(0, "a"), (1, "~a"), (2, "b")],
    },
}


def odometer_rule(p: int) -> list:
    # {x0, ..., x_{p-1}} -> {x1, ..., x_{p-1}, T[x0]}
    return [(i + 1, None) for i in range(p - 1)] + [(0, "T")]


def family_rules(family: TreeFamily, arity: int = 2) -> dict[str, list]:
    if family is TreeFamily.ODOMETER:
        return {"T": odometer_rule(arity)}
    return _RULES[family]


def family_arity(family: TreeFamily, arity: int = 2) -> int:
    if family is TreeFamily.ODOMETER:
        return arity
    return len(next(iter(_RULES[family].values())))


@dataclass(frozen=True)
class TreeAutomorphism:
    """A tree automorphism realised as a permutation of the arity^depth leaves."""
    arity: int
    depth: int
    perm: Permutation
    name: str = "?"

    def then(self, other: "TreeAutomorphism") -> "TreeAutomorphism":
        """Apply self first, then other."""
        return TreeAutomorphism(self.arity, self.depth, compose(self.perm, other.perm),
                                f"{other.name}.{self.name}")

    def inverse(self) -> "TreeAutomorphism":
        return TreeAutomorphism(self.arity, self.depth, inverse(self.perm), f"~{self.name}")

    def order(self) -> int:
        return order(self.perm)

    def is_identity(self) -> bool:
        return self.perm.is_identity()

    def sphere_action(self, level: int) -> Permutation:
        return sphere_action(self, level)

    def respects_levels(self) -> bool:
        """Leaves sharing a prefix keep sharing one, at every level."""
        for k in range(self.depth + 1):
            block = self.arity ** (self.depth - k)
            image = {}
            for leaf, target in enumerate(self.perm):
                v, w = leaf // block, target // block
                if image.setdefault(v, w) != w:
                    return False
        return True


def _unroll(rules: dict[str, list], symbol: str, arity: int, depth: int) -> Permutation:
    @lru_cache(maxsize=None)
    def perm(sym: str, d: int) -> tuple:
        if d == 0:
            return (0,)
        if sym.startswith("~"):
            return tuple(inverse(perm(sym[1:], d)))
        rule = rules[sym]
        block = arity ** (d - 1)
        out = [0] * (arity * block)
        for pos, (src, sub) in enumerate(rule):
            inner = perm(sub, d - 1) if sub else tuple(range(block))
            for x in range(block):
                out[src * block + x] = pos * block + inner[x]
        return tuple(out)

    if symbol not in rules:
        raise ValueError(f"unknown generator {symbol!r}; expected one of {sorted(rules)}")
    return Permutation._raw(perm(symbol, depth))


def tree_generator(family: TreeFamily | str, symbol: str, depth: int, arity: int = 2) -> TreeAutomorphism:
    """The generator ``symbol`` of ``family`` unrolled to ``depth`` levels."""
    family = TreeFamily(family) if not isinstance(family, TreeFamily) else family
    if depth < 1:
        raise ValueError("depth must be at least 1")
    p = family_arity(family, arity)
    rules = family_rules(family, arity)
    return TreeAutomorphism(p, depth, _unroll(rules, symbol, p, depth), symbol)


def tree_word(family: TreeFamily | str, word: str, depth: int, arity: int = 2) -> TreeAutomorphism:
    """Evaluate a word like ``"TSU"`` read as nested application T[S[U[.]]].

    The rightmost letter acts first.
    """
    family = TreeFamily(family) if not isinstance(family, TreeFamily) else family
    p = family_arity(family, arity)
    result = TreeAutomorphism(p, depth, Permutation.identity(p ** depth), "1")
    for letter in reversed(word):
        result = result.then(tree_generator(family, letter, depth, arity))
    result = TreeAutomorphism(p, depth, result.perm, word or "1")
    return result


def sphere_action(t: TreeAutomorphism, level: int) -> Permutation:
    """The permutation induced on the arity^level vertices at ``level``."""
    if not 0 <= level <= t.depth:
        raise ValueError(f"level {level} outside 0..{t.depth}")
    block = t.arity ** (t.depth - level)
    return Permutation._raw(t.perm[v * block] // block for v in range(t.arity ** level))


@dataclass
class Relation:
    name: str
    holds: bool
    required: bool = True

    def to_json(self):
        return {"relation": self.name, "holds": self.holds, "required": self.required}


def verify_relations(family: TreeFamily | str, depth: int, arity: int = 2) -> list[Relation]:
    """Check the defining relations of ``family`` as permutation identities at ``depth``."""
    family = TreeFamily(family) if not isinstance(family, TreeFamily) else family

    def w(word):
        return tree_word(family, word, depth, arity)

    def ident(word):
        return Relation(f"{word} = 1", w(word).is_identity())

    def equal(lhs, rhs, required=True):
        return Relation(f"{lhs} = {rhs}", w(lhs).perm == w(rhs).perm, required)

    if family is TreeFamily.GRIGORCHUK:
        return [ident("aa"), ident("bb"), ident("cc"), ident("dd"), ident("bcd")]
    if family is TreeFamily.GUPTA_SIDKI:
        return [ident("aaa"), ident("bbb")]
    if family is TreeFamily.TERNARY_STUJ:
        st_differs = w("ST").perm != w("TS").perm
        return [
            ident("TSU"),
            equal("KSJ", "U"),
            equal("KTJ", "S"),
            ident("JK"),
            Relation("ST != TS", st_differs, required=False),
        ]
    if family is TreeFamily.DYADIC_DIHEDRAL:
        ab = w("AB").perm
        half = 2 ** (depth - 1)
        u = tree_generator(family, "U", depth - 1).perm if depth > 1 else (0,)
        v = tree_generator(family, "V", depth - 1).perm if depth > 1 else (0,)
        both = tuple(list(u) + [half + x for x in v])
        return [
            ident("AA"),
            ident("BB"),
            ident("UV"),
            ident("VU"),
            Relation("AB = (U, V)", tuple(ab) == both),
        ]
    if family is TreeFamily.ODOMETER:
        return [Relation(f"T has order {arity}^{depth}", w("T").order() == arity ** depth)]
    raise ValueError(family)


def symmetrized(gens: Iterable[TreeAutomorphism]) -> list[TreeAutomorphism]:
    out, seen = [], set()
    for g in gens:
        for h in (g, g.inverse()):
            if h.perm not in seen:
                seen.add(h.perm)
                out.append(h)
    return out


@dataclass
class Growth:
    sizes: list[int]
    depth: int
    caveat: str = ("sizes count distinct elements of the depth-n quotient; they are lower "
                   "bounds for the infinite group and exact only while the quotient is "
                   "faithful on the ball")

    def to_json(self):
        return {"sizes": self.sizes, "depth": self.depth, "caveat": self.caveat}


def ball_growth(gens: Sequence[TreeAutomorphism], radius: int, bound: int | None = None) -> Growth:
    """|B_0|, ..., |B_radius| in the Cayley graph of the generated quotient group."""
    bound = config.WORD_BOUND if bound is None else bound
    gens = symmetrized(gens)
    if not gens:
        raise ValueError("need at least one generator")
    n = len(gens[0].perm)
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    sizes = [1]
    visited = 0
    for _ in range(radius):
        nxt = []
        for x in frontier:
            for g in gens:
                visited += 1
                if visited > bound:
                    raise BoundExceeded("visited words", bound, "ball growth")
                y = tuple(g.perm[i] for i in x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
        sizes.append(len(seen))
    return Growth(sizes, gens[0].depth)


def family_generators(family: TreeFamily | str, depth: int, arity: int = 2) -> list[TreeAutomorphism]:
    """The generators used for growth: the listed symbols of the family."""
    family = TreeFamily(family) if not isinstance(family, TreeFamily) else family
    symbols = {
        TreeFamily.ODOMETER: ["T"],
        TreeFamily.DYADIC_DIHEDRAL: ["A", "B"],
        TreeFamily.TERNARY_STUJ: ["S", "T", "U"],
        TreeFamily.GRIGORCHUK: ["a", "b", "c", "d"],
        TreeFamily.GUPTA_SIDKI: ["a", "b"],
    }[family]
    return [tree_generator(family, s, depth, arity) for s in symbols]


def orbit_group_order(gens: Sequence[Permutation]) -> int:
    """Order of the group generated by small permutations (breadth-first closure)."""
    n = len(gens[0])
    ident = tuple(range(n))
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(g[i] for i in x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen)
