"""Finite groups as explicit multiplication tables.

Constructors cover cyclic, dihedral, dicyclic, symmetric, alternating and
elementary abelian groups, direct and semidirect products and the finite
lamplighter groups.  ``named_group`` parses the textual group grammar used by
the CLI and test fixtures.
"""
from __future__ import annotations

import itertools
import math
import random
import re
from collections import Counter
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from . import config
from .config import BoundExceeded
from .perm import Permutation, PermGroup, compose, generate

FULL_CHECK_LIMIT = 64


class GroupTable:
    """A finite group: ``table[i, j]`` is the index of ``i * j``.

    The constructor checks the group axioms: identity row and column, Latin
    square rows and columns, and associativity (all triples up to order 64,
    a random sample of triples above).
    """

    def __init__(self, table, identity: int = 0, labels: Sequence[str] | None = None,
                 name: str | None = None, check: bool = True):
        arr = np.asarray(table, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("table must be square")
        arr.setflags(write=False)
        self.table = arr
        self.order = int(arr.shape[0])
        self.identity = int(identity)
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(self.order))
        if len(self.labels) != self.order:
            raise ValueError("label count does not match order")
        self.name = name
        if check:
            self._check()
        self._inv = None
        self._orders = None
        self._rows = None

    def _check(self):
        n, t, e = self.order, self.table, self.identity
        if n == 0:
            raise ValueError("empty group")
        if not (0 <= e < n):
            raise ValueError("identity index out of range")
        ar = np.arange(n)
        if (t < 0).any() or (t >= n).any():
            raise ValueError("table entry out of range")
        if not (t[e] == ar).all() or not (t[:, e] == ar).all():
            raise ValueError("identity row/column is not the identity")
        srt = np.sort(t, axis=1)
        if not (srt == ar).all() or not (np.sort(t, axis=0) == ar[:, None]).all():
            raise ValueError("table is not a Latin square")
        if n <= FULL_CHECK_LIMIT:
            left = t[t, :]            # left[a, b, c] = (a*b)*c
            right = t[:, t]           # right[a, b, c] = a*(b*c)
            if not (left == right).all():
                raise ValueError("multiplication is not associative")
        else:
            rng = np.random.default_rng(0)
            a, b, c = rng.integers(0, n, size=(3, 20000))
            if not (t[t[a, b], c] == t[a, t[b, c]]).all():
                raise ValueError("multiplication is not associative")

    # element arithmetic

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    @property
    def rows(self) -> list[list[int]]:
        if self._rows is None:
            self._rows = self.table.tolist()
        return self._rows

    def inv(self, a: int) -> int:
        if self._inv is None:
            row = self.rows
            self._inv = [row[x].index(self.identity) for x in range(self.order)]
        return self._inv[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        out = self.identity
        for _ in range(k):
            out = self.rows[out][a]
        return out

    def element_order(self, a: int) -> int:
        if self._orders is None:
            orders = []
            for x in range(self.order):
                k, y = 1, x
                while y != self.identity:
                    y = self.rows[y][x]
                    k += 1
                orders.append(k)
            self._orders = orders
        return self._orders[a]

    def element_orders(self) -> list[int]:
        self.element_order(0)
        return list(self._orders)

    def order_census(self) -> tuple[tuple[int, int], ...]:
        """Sorted (element order, count) pairs."""
        return tuple(sorted(Counter(self.element_orders()).items()))

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def center(self) -> list[int]:
        t = self.table
        return [a for a in range(self.order) if (t[a] == t[:, a]).all()]

    def left_translation(self, g: int) -> Permutation:
        return Permutation._raw(self.rows[g])

    def right_translation(self, g: int) -> Permutation:
        return Permutation._raw(self.table[:, g].tolist())

    def left_regular(self) -> PermGroup:
        """The left regular representation x -> g x as a permutation group."""
        elems = [self.left_translation(g) for g in range(self.order)]
        return PermGroup.from_elements(elems, degree=self.order)

    def generated_subgroup(self, gens: Sequence[int]) -> set[int]:
        seen = {self.identity}
        todo = [self.identity]
        while todo:
            x = todo.pop()
            for g in gens:
                y = self.rows[x][g]
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return seen

    def relabel(self, perm: Sequence[int]) -> "GroupTable":
        """The isomorphic table whose element i is this table's element perm^-1(i)."""
        n = self.order
        inv = [0] * n
        for i, v in enumerate(perm):
            inv[v] = i
        t = [[perm[self.rows[inv[i]][inv[j]]] for j in range(n)] for i in range(n)]
        labels = [self.labels[inv[i]] for i in range(n)]
        return GroupTable(t, identity=perm[self.identity], labels=labels, name=self.name)

    def __eq__(self, other):
        if not isinstance(other, GroupTable):
            return NotImplemented
        return self.identity == other.identity and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.identity, self.table.tobytes()))

    def __repr__(self):
        return f"GroupTable({self.name or '?'}, order={self.order})"


def _check_bound(n: int, what="group order"):
    if n > config.ORDER_BOUND:
        raise BoundExceeded(what, config.ORDER_BOUND)


# named constructors

def cyclic(n: int) -> GroupTable:
    _check_bound(n)
    t = [[(i + j) % n for j in range(n)] for i in range(n)]
    return GroupTable(t, labels=[str(i) for i in range(n)], name=f"Z{n}", check=n <= FULL_CHECK_LIMIT)


def _word(base: str, k: int) -> str:
    if k == 0:
        return ""
    return base if k == 1 else f"{base}^{k}"


def dihedral(n: int) -> GroupTable:
    """Symmetries of the n-gon, order 2n.  Element r^i s^j sits at index i + n*j."""
    _check_bound(2 * n)
    size = 2 * n

    def mul(x, y):
        a, b = x % n, x // n
        c, d = y % n, y // n
        i = (a + (c if b == 0 else -c)) % n
        return i + n * ((b + d) % 2)

    t = [[mul(x, y) for y in range(size)] for x in range(size)]
    labels = [(_word("r", i % n) + ("s" if i // n else "")) or "e" for i in range(size)]
    return GroupTable(t, labels=labels, name=f"D{n}")


def dicyclic(n: int) -> GroupTable:
    """<a, b | a^(2n) = 1, b^2 = a^n, b^-1 a b = a^-1>, order 4n; a^i b^j at index i + 2n*j."""
    m = 2 * n
    size = 2 * m
    _check_bound(size)

    def mul(x, y):
        i, j = x % m, x // m
        k, l = y % m, y // m
        if j == 0:
            return (i + k) % m + m * l
        # a^i b a^k b^l = a^(i-k) b^(1+l)
        if l == 0:
            return (i - k) % m + m
        return (i - k + n) % m

    t = [[mul(x, y) for y in range(size)] for x in range(size)]
    if n == 2:
        labels = ["1", "i", "-1", "-i", "j", "k", "-j", "-k"]
        name = "Q8"
    else:
        labels = [(_word("a", i % m) + ("b" if i // m else "")) or "e" for i in range(size)]
        name = f"Dic{n}"
    return GroupTable(t, labels=labels, name=name)


def quaternion() -> GroupTable:
    return dicyclic(2)


def _perm_table(elems: list[Permutation], name: str) -> GroupTable:
    index = {p: i for i, p in enumerate(elems)}
    t = [[index[compose(p, q)] for q in elems] for p in elems]
    return GroupTable(t, labels=[p.cycle_string() for p in elems], name=name)


def symmetric(n: int) -> GroupTable:
    _check_bound(math.factorial(n))
    elems = [Permutation._raw(p) for p in itertools.permutations(range(n))]
    return _perm_table(elems, f"S{n}")


def alternating(n: int) -> GroupTable:
    _check_bound(max(math.factorial(n) // 2, 1))
    elems = [Permutation._raw(p) for p in itertools.permutations(range(n))]
    elems = [p for p in elems if p.sign() == 1]
    return _perm_table(elems, f"A{n}")


def elementary_abelian(p: int, k: int) -> GroupTable:
    """Z_p^k with vectors stored in base p (first coordinate most significant)."""
    size = p ** k
    _check_bound(size)
    vecs = list(itertools.product(range(p), repeat=k))
    index = {v: i for i, v in enumerate(vecs)}
    t = [[index[tuple((a + b) % p for a, b in zip(u, v))] for v in vecs] for u in vecs]
    labels = ["".join(map(str, v)) if k else "0" for v in vecs]
    return GroupTable(t, labels=labels, name=f"E({p},{k})", check=size <= FULL_CHECK_LIMIT)


def trivial() -> GroupTable:
    return GroupTable([[0]], labels=["e"], name="1")


def from_perm_group(group: PermGroup, name: str | None = None) -> GroupTable:
    """Table of a permutation group with product g*h = compose(g, h) (g first)."""
    elems = sorted(group.elements)
    _check_bound(len(elems))
    return _perm_table(elems, name or f"G{len(elems)}")


# products

def direct_product(a: GroupTable, b: GroupTable) -> GroupTable:
    """Pairs (x, y) stored at index x * |b| + y, multiplied componentwise."""
    na, nb = a.order, b.order
    _check_bound(na * nb)
    ta, tb = a.table, b.table
    t = (ta[:, None, :, None] * nb + tb[None, :, None, :]).reshape(na * nb, na * nb)
    labels = [f"({x},{y})" for x in a.labels for y in b.labels]
    name = f"{a.name or '?'} x {b.name or '?'}"
    return GroupTable(t, identity=a.identity * nb + b.identity, labels=labels, name=name)


def extend_action(normal: GroupTable, base: GroupTable,
                  action: Mapping[int, Sequence[int]]) -> dict[int, Permutation]:
    """Extend automorphism images given on some base elements to all of ``base``.

    Raises ValueError unless the given images define a homomorphism from
    ``base`` into Aut(``normal``).
    """
    n = normal.order
    ident = Permutation.identity(n)
    gens = {int(k): Permutation(v) for k, v in action.items()}
    for k, phi in gens.items():
        if len(phi) != n:
            raise ValueError("automorphism image has wrong degree")
        if not is_automorphism(normal, phi):
            raise ValueError(f"image of base element {k} is not an automorphism")
    full = {base.identity: ident}
    todo = [base.identity]
    while todo:
        k = todo.pop()
        for t, phi_t in gens.items():
            kt = base.mul(k, t)
            # phi_{k t} = phi_k o phi_t: apply phi_t first
            img = compose(phi_t, full[k])
            if kt in full:
                if full[kt] != img:
                    raise ValueError("action is not a homomorphism")
            else:
                full[kt] = img
                todo.append(kt)
    if len(full) != base.order:
        raise ValueError("action images do not generate the base group")
    for k1 in range(base.order):
        for k2 in range(base.order):
            if full[base.mul(k1, k2)] != compose(full[k2], full[k1]):
                raise ValueError("action is not a homomorphism")
    return full


def is_automorphism(g: GroupTable, phi: Sequence[int]) -> bool:
    rows = g.rows
    n = g.order
    return all(phi[rows[a][b]] == rows[phi[a]][phi[b]] for a in range(n) for b in range(n))


def semidirect_product(normal: GroupTable, base: GroupTable,
                       action: Mapping[int, Sequence[int]], name: str | None = None) -> GroupTable:
    """Pairs (k, h), base first, with (k1, h1)(k2, h2) = (k1 k2, h1 * phi_k1(h2)).

    ``action`` maps base elements (typically generators) to automorphisms of
    ``normal`` given as image arrays; it is verified and extended.
    """
    phi = extend_action(normal, base, action)
    nn, nk = normal.order, base.order
    _check_bound(nn * nk)
    rows_n, rows_k = normal.rows, base.rows
    size = nn * nk
    t = [[0] * size for _ in range(size)]
    for k1 in range(nk):
        p = phi[k1]
        for h1 in range(nn):
            row = t[k1 * nn + h1]
            for k2 in range(nk):
                kk = rows_k[k1][k2] * nn
                for h2 in range(nn):
                    row[k2 * nn + h2] = kk + rows_n[h1][p[h2]]
    labels = [f"({k};{h})" for k in base.labels for h in normal.labels]
    name = name or f"sd({normal.name or '?'},{base.name or '?'})"
    return GroupTable(t, identity=base.identity * nn + normal.identity, labels=labels, name=name)


def wreath_cyclic_lamplighter(n: int) -> GroupTable:
    """Z_2^n semidirect Z_n, the base cyclically shifting lamp coordinates."""
    _check_bound(n * 2 ** n)
    lamps = elementary_abelian(2, n)
    base = cyclic(n)
    if n == 1:
        g = semidirect_product(lamps, base, {0: list(range(2))})
        g.name = "LL(1)"
        return g
    vecs = list(itertools.product(range(2), repeat=n))
    index = {v: i for i, v in enumerate(vecs)}
    shift = [index[v[-1:] + v[:-1]] for v in vecs]
    g = semidirect_product(lamps, base, {1: shift}, name=f"LL({n})")
    return g


lamplighter = wreath_cyclic_lamplighter


# invariants, classes, isomorphism

def conjugacy_classes(g: GroupTable) -> list[list[int]]:
    """Classes of x under h x h^-1, each sorted, listed by smallest member."""
    n = g.order
    rows = g.rows
    seen = [False] * n
    out = []
    for x in range(n):
        if seen[x]:
            continue
        cls = sorted({rows[rows[h][x]][g.inv(h)] for h in range(n)})
        for y in cls:
            seen[y] = True
        out.append(cls)
    return out


def inverse_closed_classes(g: GroupTable) -> list[list[int]]:
    """Conjugacy classes merged with the classes of their inverses."""
    out = []
    seen = set()
    classes = conjugacy_classes(g)
    where = {x: i for i, c in enumerate(classes) for x in c}
    for i, c in enumerate(classes):
        if i in seen:
            continue
        j = where[g.inv(c[0])]
        seen.update((i, j))
        out.append(sorted(set(c) | set(classes[j])))
    return sorted(out, key=lambda c: c[0])


def _element_invariants(g: GroupTable) -> list[tuple]:
    classes = conjugacy_classes(g)
    size = {x: len(c) for c in classes for x in c}
    orders = g.element_orders()
    rows = g.rows
    # (order, class size, order of the square, number of square roots)
    roots = Counter(rows[x][x] for x in range(g.order))
    return [(orders[x], size[x], orders[rows[x][x]], roots[x]) for x in range(g.order)]


def invariants(g: GroupTable) -> tuple:
    return (
        g.order,
        g.order_census(),
        g.is_abelian(),
        len(g.center()),
        tuple(sorted(Counter(len(c) for c in conjugacy_classes(g)).items())),
    )


def _greedy_generators(g: GroupTable, inv) -> list[int]:
    # few generators, rarest invariant first, so the candidate lists stay short
    freq = Counter(inv)
    ranked = sorted(range(g.order), key=lambda x: (-inv[x][0], freq[inv[x]], x))
    gens: list[int] = []
    span = {g.identity}
    for x in ranked:
        if len(span) == g.order:
            break
        if x not in span:
            gens.append(x)
            span = g.generated_subgroup(gens)
    return gens


def _iter_isomorphisms(a: GroupTable, b: GroupTable, first_only: bool):
    if a.order != b.order:
        return
    inv_a = _element_invariants(a)
    inv_b = _element_invariants(b)
    if Counter(inv_a) != Counter(inv_b):
        return
    gens = _greedy_generators(a, inv_a)
    cands = [[y for y in range(b.order) if inv_b[y] == inv_a[x]] for x in gens]
    ra, rb = a.rows, b.rows

    def extend(images, depth):
        # map the subgroup generated by gens[:depth] consistently
        mapping = {a.identity: b.identity}
        used = {b.identity}
        todo = [a.identity]
        while todo:
            x = todo.pop()
            fx = mapping[x]
            for g, h in zip(gens[:depth], images):
                y = ra[x][g]
                fy = rb[fx][h]
                got = mapping.get(y)
                if got is None:
                    if fy in used:
                        return None
                    mapping[y] = fy
                    used.add(fy)
                    todo.append(y)
                elif got != fy:
                    return None
        return mapping

    def search(images):
        depth = len(images)
        mapping = extend(images, depth)
        if mapping is None:
            return
        if depth == len(gens):
            if len(mapping) == a.order:
                perm = Permutation._raw(mapping[x] for x in range(a.order))
                if all(perm[ra[x][y]] == rb[perm[x]][perm[y]]
                       for x in range(a.order) for y in range(a.order)):
                    yield perm
            return
        for y in cands[depth]:
            yield from search(images + [y])

    for p in search([]):
        yield p
        if first_only:
            return


def are_isomorphic(a: GroupTable, b: GroupTable) -> Permutation | None:
    """An isomorphism as a permutation of indices (a's x goes to b's p[x]), or None."""
    if invariants(a) != invariants(b):
        return None
    return next(_iter_isomorphisms(a, b, True), None)


def automorphism_group(g: GroupTable) -> PermGroup:
    """All table automorphisms as permutations of element indices."""
    if g.order > config.DECISION_BOUND:
        raise BoundExceeded("group order", config.DECISION_BOUND, "automorphism group")
    elems = list(_iter_isomorphisms(g, g, False))
    return PermGroup.from_elements(elems, degree=g.order)


def inner_automorphism_count(g: GroupTable) -> int:
    rows = g.rows
    conj = {tuple(rows[rows[h][x]][g.inv(h)] for x in range(g.order)) for h in range(g.order)}
    return len(conj)


# identification against a small catalog

def _abelian_types(n: int) -> list[str]:
    # all products of cyclic prime-power groups of order n
    factors = Counter()
    m, p = n, 2
    while m > 1:
        while m % p == 0:
            factors[p] += 1
            m //= p
        p += 1
    per_prime = []
    for p, e in sorted(factors.items()):
        per_prime.append([[p ** k for k in part] for part in _partitions(e)])
    out = []
    for combo in itertools.product(*per_prime):
        # invariant factor form: multiply the i-th largest power of each prime
        width = max(len(c) for c in combo)
        factors_i = [math.prod(c[i] for c in combo if i < len(c)) for i in range(width)]
        out.append(" x ".join(f"Z{x}" for x in sorted(factors_i)))
    return out


def _partitions(e: int, largest: int | None = None):
    largest = e if largest is None else largest
    if e == 0:
        yield []
        return
    for k in range(min(e, largest), 0, -1):
        for rest in _partitions(e - k, k):
            yield [k] + rest


def _catalog(n: int) -> list[str]:
    names = [] if n == 1 else _abelian_types(n)
    if n % 2 == 0 and n >= 6:
        names.append(f"D{n // 2}")
    if n % 4 == 0 and n >= 8:
        names.append("Q8" if n == 8 else f"Dic{n // 4}")
    for k in range(3, 7):
        if math.factorial(k) == n:
            names.append(f"S{k}")
        if math.factorial(k) // 2 == n and k >= 4:
            names.append(f"A{k}")
    for k in range(1, 7):
        if k * 2 ** k == n and k >= 3:
            names.append(f"LL({k})")
    if n % 4 == 0 and n >= 12:
        names.append(f"D{n // 4} x Z2")
    if n == 21:
        names.append("sd(Z7,Z3,1->[0,2,4,6,1,3,5])")
    if n % 6 == 0 and n >= 12:
        names.append(f"S3 x Z{n // 6}")
    if n == 16:
        names.extend(["Q8 x Z2", "D4 x Z2"])
    return names


def identify(g: GroupTable) -> str:
    """A catalog name isomorphic to ``g``, or ``order-n group`` when unknown."""
    if g.order == 1:
        return "1"
    for name in _catalog(g.order):
        try:
            cand = named_group(name)
        except (ValueError, BoundExceeded):
            continue
        if are_isomorphic(g, cand) is not None:
            return name
    return f"order-{g.order} group"


# grammar

class GroupSpecError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(->|\[[^\]]*\]|[A-Za-z]+:[^\s,()]+|[A-Za-z]+|\d+|[(),x])")


def named_group(spec: str) -> GroupTable:
    """Parse a group expression.

    Grammar: ``Zn``, ``Dn``, ``Q8``, ``Dicn``, ``Sn``, ``An``, ``E(p,k)``,
    ``LL(n)``, ``A x B``, ``sd(N,K,gen->[images],...)``, ``table:<file>``,
    ``perms:<file>``.
    """
    parser = _Parser(spec)
    g = parser.expr()
    parser.expect_end()
    return g


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text):
        toks, i = [], 0
        text = text.strip()
        while i < len(text):
            m = _TOKEN.match(text, i)
            if not m:
                raise GroupSpecError(f"cannot parse group spec {text!r} at {i}")
            toks.append(m.group(1))
            i = m.end()
            while i < len(text) and text[i].isspace():
                i += 1
        return toks

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self, want=None):
        tok = self.peek()
        if tok is None or (want is not None and tok != want):
            raise GroupSpecError(f"expected {want or 'token'} in {self.text!r}, got {tok!r}")
        self.pos += 1
        return tok

    def expect_end(self):
        if self.peek() is not None:
            raise GroupSpecError(f"trailing input {self.peek()!r} in {self.text!r}")

    def expr(self) -> GroupTable:
        g = self.atom()
        while self.peek() == "x":
            self.take("x")
            g = direct_product(g, self.atom())
        return g

    def int_arg(self) -> int:
        tok = self.take()
        if not tok.isdigit():
            raise GroupSpecError(f"expected integer, got {tok!r}")
        return int(tok)

    def atom(self) -> GroupTable:
        tok = self.take()
        if tok == "(":
            g = self.expr()
            self.take(")")
            return g
        if ":" in tok:
            kind, path = tok.split(":", 1)
            if kind == "table":
                from .fileio import read_table
                return read_table(Path(path))
            if kind == "perms":
                from .fileio import read_perms
                return from_perm_group(generate(read_perms(Path(path))), name=f"perms:{path}")
            raise GroupSpecError(f"unknown source {kind!r}")
        if tok == "E":
            self.take("(")
            p = self.int_arg()
            self.take(",")
            k = self.int_arg()
            self.take(")")
            return elementary_abelian(p, k)
        if tok == "LL":
            self.take("(")
            n = self.int_arg()
            self.take(")")
            return wreath_cyclic_lamplighter(n)
        if tok == "sd":
            return self.semidirect()
        m = re.fullmatch(r"(Z|D|Q|Dic|S|A)", tok)
        if m and self.peek() is not None and self.peek().isdigit():
            n = self.int_arg()
            return _named(tok, n)
        m = re.fullmatch(r"(Z|D|Q|Dic|S|A)(\d+)", tok)
        if m:
            return _named(m.group(1), int(m.group(2)))
        raise GroupSpecError(f"unknown group {tok!r}")

    def semidirect(self) -> GroupTable:
        self.take("(")
        normal = self.expr()
        self.take(",")
        base = self.expr()
        action = {}
        while self.peek() == ",":
            self.take(",")
            k = self.int_arg()
            self.take("->")
            arr = self.take()
            if not arr.startswith("["):
                raise GroupSpecError("expected [image array] after ->")
            action[k] = [int(x) for x in re.split(r"[\s,]+", arr[1:-1].strip()) if x]
        self.take(")")
        if not action:
            action = {k: list(range(normal.order)) for k in range(base.order)}
        try:
            return semidirect_product(normal, base, action)
        except ValueError as exc:
            raise GroupSpecError(str(exc)) from exc


def _named(kind: str, n: int) -> GroupTable:
    if n < 1:
        raise GroupSpecError("group parameter must be positive")
    if kind == "Z":
        return cyclic(n)
    if kind == "D":
        if n == 1:
            return cyclic(2)
        return dihedral(n)
    if kind == "Q":
        if n != 8:
            raise GroupSpecError("only Q8 is supported")
        return quaternion()
    if kind == "Dic":
        return dicyclic(n)
    if kind == "S":
        return symmetric(n)
    if kind == "A":
        return alternating(n)
    raise GroupSpecError(kind)


def random_relabel(g: GroupTable, rng: random.Random) -> GroupTable:
    perm = list(range(g.order))
    rng.shuffle(perm)
    return g.relabel(perm)
