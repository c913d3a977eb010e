"""Permutations of {0..n-1} and finitely generated permutation groups.

Composition convention, used everywhere in the package: ``compose(p, q)``
applies ``p`` first and then ``q``, so ``compose(p, q)[i] == q[p[i]]``.
"""
from __future__ import annotations

import math
from collections import deque
from functools import reduce
from typing import Iterable, Sequence

from . import config
from .config import BoundExceeded


class Permutation(tuple):
    """A bijection of {0..n-1} stored as its image array.

    ``p[i]`` is where point ``i`` goes.  Instances are plain tuples, so they
    hash, compare and serialize (as JSON arrays) like tuples do.
    """

    def __new__(cls, images: Iterable[int] = ()):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images}")
        return tuple.__new__(cls, images)

    @classmethod
    def _raw(cls, images):
        # trusted constructor, skips validation
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._raw(range(n))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a] = b
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self)

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self))

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles (fixed points included), each starting at its minimum."""
        seen = [False] * len(self)
        out = []
        for start in range(len(self)):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self[x]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.cycles()))

    def sign(self) -> int:
        # parity of (length - 1) summed over cycles
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def fixed_points(self) -> list[int]:
        return [i for i, v in enumerate(self) if i == v]

    def __mul__(self, other):
        # p * q is "p then q", matching compose
        return compose(self, other)

    def __pow__(self, k: int):
        return power(self, k)

    def cycle_string(self) -> str:
        parts = ["(" + " ".join(map(str, c)) + ")" for c in self.cycles() if len(c) > 1]
        return "".join(parts) or "()"


def compose(p: Sequence[int], q: Sequence[int]) -> Permutation:
    """Apply ``p`` first, then ``q``."""
    if len(p) != len(q):
        raise ValueError(f"degree mismatch: {len(p)} vs {len(q)}")
    return Permutation._raw(q[i] for i in p)


def inverse(p: Sequence[int]) -> Permutation:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return Permutation._raw(inv)


def order(p: Sequence[int]) -> int:
    """Least k >= 1 with p^k = identity, i.e. the lcm of the cycle lengths."""
    return reduce(math.lcm, (len(c) for c in Permutation._raw(p).cycles()), 1)


def power(p: Sequence[int], k: int) -> Permutation:
    p = Permutation._raw(p)
    if k < 0:
        p, k = inverse(p), -k
    result = Permutation.identity(len(p))
    base = p
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


class PermGroup:
    """A permutation group given by generators, with lazily enumerated elements.

    Enumeration is breadth-first closure and refuses to go past
    ``config.ORDER_BOUND`` elements.
    """

    def __init__(self, generators: Iterable[Sequence[int]], degree: int | None = None,
                 elements: Iterable[Sequence[int]] | None = None, bound: int | None = None,
                 order_hint: int | None = None):
        gens = [Permutation(g) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group with no generators")
            degree = len(gens[0])
        if any(len(g) != degree for g in gens):
            raise ValueError("generators of unequal degree")
        self.degree = degree
        self.generators = tuple(gens)
        self.bound = config.ORDER_BOUND if bound is None else bound
        self._elements = None
        self._order_hint = order_hint
        if elements is not None:
            self._elements = frozenset(Permutation._raw(e) for e in elements)

    @classmethod
    def from_elements(cls, elements: Iterable[Sequence[int]], degree: int | None = None) -> "PermGroup":
        """Wrap an already closed element set; a small generating set is extracted."""
        elems = sorted({Permutation._raw(e) for e in elements})
        if degree is None:
            degree = len(elems[0])
        gens = _small_generating_set(elems, degree)
        return cls(gens, degree=degree, elements=elems)

    @property
    def elements(self) -> frozenset:
        if self._elements is None:
            self._elements = frozenset(_closure(self.generators, self.degree, self.bound))
        return self._elements

    @property
    def order(self) -> int:
        # a known order (e.g. from a strong generating set) avoids enumeration
        if self._elements is None and self._order_hint is not None:
            return self._order_hint
        return len(self.elements)

    def sorted_elements(self) -> list[Permutation]:
        return sorted(self.elements)

    def __contains__(self, p) -> bool:
        return tuple(p) in self.elements

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other):
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.degree == other.degree and self.elements == other.elements

    def __hash__(self):
        return hash((self.degree, self.elements))

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, gens={len(self.generators)})"

    def orbit(self, point: int) -> set[int]:
        seen = {point}
        todo = [point]
        gens = self.generators or (Permutation.identity(self.degree),)
        while todo:
            x = todo.pop()
            for g in gens:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return seen

    def orbits(self) -> list[list[int]]:
        out, seen = [], set()
        for x in range(self.degree):
            if x not in seen:
                orb = sorted(self.orbit(x))
                seen.update(orb)
                out.append(orb)
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree if self.degree else True

    def is_regular(self) -> bool:
        return self.is_transitive() and self.order == self.degree

    def regular_subgroups(self) -> list["PermGroup"]:
        return regular_subgroups(self)


def _closure(gens: Sequence[Permutation], degree: int, bound: int) -> set[Permutation]:
    ident = Permutation.identity(degree)
    elems = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose(x, g)
            if y not in elems:
                elems.add(y)
                if len(elems) > bound:
                    raise BoundExceeded("permutation group order", bound, "enumeration")
                queue.append(y)
    if math.factorial(degree) % len(elems):
        raise AssertionError("group order does not divide n!")
    return elems


def _small_generating_set(elems: Sequence[Permutation], degree: int) -> list[Permutation]:
    gens: list[Permutation] = []
    current = {Permutation.identity(degree)}
    # try high-order elements first, they tend to generate more
    for e in sorted(elems, key=lambda p: (-order(p), p)):
        if e not in current:
            gens.append(e)
            current = _closure(gens, degree, max(len(elems), 1))
            if len(current) == len(elems):
                break
    return gens


def generate(gens: Iterable[Sequence[int]], bound: int | None = None) -> PermGroup:
    """Closure of ``gens`` under composition; raises BoundExceeded past the order bound."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    group = PermGroup(gens, bound=bound)
    group.elements  # force enumeration so the bound is checked now
    return group


def is_regular(group: PermGroup) -> bool:
    return group.is_regular()


def _semiregular(p: Sequence[int]) -> bool:
    # every cycle has the same length and there are no fixed points
    lengths = {len(c) for c in Permutation._raw(p).cycles()}
    return len(lengths) == 1 and 1 not in lengths


def regular_subgroups(group: PermGroup) -> list[PermGroup]:
    """All subgroups of ``group`` acting regularly on its points.

    Backtracks over a transversal: for the smallest point x not yet reached
    from 0 we pick an element mapping 0 to x, close the chosen set under
    composition, and prune as soon as some element would have a fixed point
    or two elements would send 0 to the same place.  A regular subgroup has
    exactly one element mapping 0 to x, so each subgroup is reached by one
    path only.
    """
    n = group.degree
    if n == 0 or group.order % n:
        return []
    if n == 1:
        return [PermGroup([], degree=1, elements=[Permutation.identity(1)])]
    by_target: dict[int, list[tuple]] = {x: [] for x in range(n)}
    semiregular = set()
    for g in group.sorted_elements():
        if not g.is_identity() and _semiregular(g):
            t = tuple(g)
            semiregular.add(t)
            by_target[g[0]].append(t)
    ident = tuple(range(n))
    found: list[tuple[list, dict]] = []

    def extend(assigned: dict[int, tuple], gens: list[tuple]):
        if len(assigned) == n:
            found.append((list(gens), assigned))
            return
        x = next(i for i in range(n) if i not in assigned)
        for g in by_target[x]:
            new = _close_semiregular(assigned, gens, g, semiregular)
            if new is not None:
                extend(new, gens + [g])

    extend({0: ident}, [])
    out = []
    for gens, table in sorted(found, key=lambda f: sorted(f[1].values())):
        out.append(PermGroup([Permutation._raw(g) for g in gens], degree=n,
                             elements=table.values()))
    return out


def _close_semiregular(assigned: dict, gens: list, g: tuple, semiregular: set):
    """Closure of the assigned elements plus ``g``, keyed by image of 0.

    Returns None unless every element is semiregular and no two elements
    send 0 to the same point.
    """
    table = dict(assigned)
    table[g[0]] = g
    allgens = gens + [g]
    queue = deque(table.values())
    while queue:
        x = queue.popleft()
        for h in allgens:
            y = tuple([h[i] for i in x])
            have = table.get(y[0])
            if have is None:
                if y not in semiregular:
                    return None
                table[y[0]] = y
                queue.append(y)
            elif have != y:
                return None
    return table
