"""Weighted graphs, the geodesic metric and graph constructions.

Vertices are 0..n-1.  Edge weights are exact positive rationals; a graph
whose weights are all 1 is simple.  Products lay out the pair (a, b) at
index a * |H| + b, the same layout the group direct product uses, so a
product of Cayley graphs can be compared vertex by vertex with the Cayley
graph of the product group.
"""
from __future__ import annotations

import enum
import heapq
import itertools
import re
from collections import deque
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import config
from .config import BoundExceeded
from .group import GroupTable, semidirect_product
from .metric import CompatibilityMode, MetricSpace, NaturalnessVerdict, as_fraction, compatible_structures
from .perm import PermGroup, Permutation
from .search import automorphism_generators, find_isomorphism, joint_color_matrices

ONE = Fraction(1)


class WeightedGraph:
    """An undirected graph with positive rational edge weights.

    ``skeleton`` optionally caps the dimension of the clique complex: the
    cycle C3 is the triangle graph seen as a 1-dimensional complex, which
    matters for connection graphs and homology but not for the metric.
    """

    def __init__(self, n: int, edges: Mapping[tuple[int, int], object] | Iterable = (),
                 labels: Sequence[str] | None = None, name: str | None = None,
                 skeleton: int | None = None):
        self.n = int(n)
        self.edges: dict[tuple[int, int], Fraction] = {}
        items = edges.items() if isinstance(edges, Mapping) else ((e[:2], e[2] if len(e) > 2 else ONE) for e in edges)
        for (u, v), w in items:
            self._add(int(u), int(v), as_fraction(w))
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(self.n))
        if len(self.labels) != self.n:
            raise ValueError("label count does not match vertex count")
        self.name = name
        self.skeleton = skeleton
        self._adj = None

    def _add(self, u, v, w):
        if u == v:
            raise ValueError(f"self-loop at {u}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"edge ({u},{v}) out of range")
        if w <= 0:
            raise ValueError("edge weights must be positive")
        key = (min(u, v), max(u, v))
        if key in self.edges and self.edges[key] != w:
            raise ValueError(f"parallel edge {key} with different weight")
        self.edges[key] = w

    @property
    def simple(self) -> bool:
        return all(w == 1 for w in self.edges.values())

    @property
    def adjacency(self) -> list[set[int]]:
        if self._adj is None:
            adj = [set() for _ in range(self.n)]
            for u, v in self.edges:
                adj[u].add(v)
                adj[v].add(u)
            self._adj = adj
        return self._adj

    def neighbors(self, v: int) -> set[int]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def weight(self, u: int, v: int) -> Fraction | None:
        return self.edges.get((min(u, v), max(u, v)))

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        todo = [0]
        while todo:
            x = todo.pop()
            for y in self.adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return len(seen) == self.n

    def edge_set(self) -> set[tuple[int, int]]:
        return set(self.edges)

    def relabel(self, perm: Sequence[int]) -> "WeightedGraph":
        """Vertex i becomes perm[i]."""
        edges = {(perm[u], perm[v]): w for (u, v), w in self.edges.items()}
        labels = [""] * self.n
        for i, p in enumerate(perm):
            labels[p] = self.labels[i]
        return WeightedGraph(self.n, edges, labels, self.name, self.skeleton)

    def weight_matrix(self) -> list[list]:
        """Weights with None for non-edges and 0 on the diagonal."""
        m = [[None] * self.n for _ in range(self.n)]
        for i in range(self.n):
            m[i][i] = Fraction(0)
        for (u, v), w in self.edges.items():
            m[u][v] = m[v][u] = w
        return m

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, frozenset(self.edges.items())))

    def __repr__(self):
        return f"WeightedGraph({self.name or '?'}, n={self.n}, m={self.edge_count})"


# named graphs

def cycle(n: int) -> WeightedGraph:
    if n < 1:
        raise ValueError("cycle needs at least one vertex")
    if n == 1:
        return WeightedGraph(1, name="C1")
    if n == 2:
        return WeightedGraph(2, [(0, 1)], name="C2")
    return WeightedGraph(n, [(i, (i + 1) % n) for i in range(n)], name=f"C{n}",
                         skeleton=1 if n == 3 else None)


def complete(n: int) -> WeightedGraph:
    return WeightedGraph(n, itertools.combinations(range(n), 2), name=f"K{n}")


def points(n: int) -> WeightedGraph:
    return WeightedGraph(n, name=f"P{n}")


def complete_bipartite(a: int, b: int) -> WeightedGraph:
    return WeightedGraph(a + b, [(i, a + j) for i in range(a) for j in range(b)], name=f"K{a}{b}")


def prism(n: int) -> WeightedGraph:
    g = product(cycle(n), complete(2), ProductKind.CARTESIAN)
    g.name = f"prism({n})"
    return g


def octahedron() -> WeightedGraph:
    # K_{2,2,2}: antipodal pairs {0,1}, {2,3}, {4,5}
    edges = [(u, v) for u, v in itertools.combinations(range(6), 2) if u // 2 != v // 2]
    return WeightedGraph(6, edges, name="octahedron")


def hypercube(k: int) -> WeightedGraph:
    n = 1 << k
    edges = [(v, v ^ (1 << i)) for v in range(n) for i in range(k) if v < v ^ (1 << i)]
    return WeightedGraph(n, edges, name=f"cube({k})")


def tetrahedron() -> WeightedGraph:
    g = complete(4)
    g.name = "tetrahedron"
    return g


def icosahedron() -> WeightedGraph:
    # apex 0, upper ring 1..5, lower ring 6..10, apex 11
    edges = []
    for i in range(5):
        up, up_next = 1 + i, 1 + (i + 1) % 5
        lo, lo_next = 6 + i, 6 + (i + 1) % 5
        edges += [(0, up), (up, up_next), (lo, lo_next), (11, lo), (up, lo), (up_next, lo)]
    return WeightedGraph(12, edges, name="icosahedron")


def truncate(g: WeightedGraph, name: str | None = None) -> WeightedGraph:
    """Vertex truncation of a triangulated polyhedron's 1-skeleton.

    Vertex v is replaced by one new vertex (v, u) per neighbour u.  The new
    vertices of v form the cycle given by v's link: (v, u) ~ (v, w) when u ~ w.
    Each old edge u v survives as (u, v) ~ (v, u).
    """
    index = {}
    for v in range(g.n):
        for u in sorted(g.neighbors(v)):
            index[(v, u)] = len(index)
    edges = []
    for (u, v) in g.edges:
        edges.append((index[(u, v)], index[(v, u)]))
    for v in range(g.n):
        nb = sorted(g.neighbors(v))
        for u, w in itertools.combinations(nb, 2):
            if g.has_edge(u, w):
                edges.append((index[(v, u)], index[(v, w)]))
    labels = [f"{v}>{u}" for (v, u) in index]
    return WeightedGraph(len(index), edges, labels, name=name)


def named_graph(spec: str) -> WeightedGraph:
    """Build a graph from ``Cn``, ``Kn``, ``Pn`` (n isolated points), ``K33`` or ``Ka,b``, ``prism(n)``, ``octahedron``,
    ``trunctet``, ``truncicosa``, ``cube(k)`` (also ``tetrahedron``, ``icosahedron``)."""
    s = spec.strip()
    if s == "K33":
        return complete_bipartite(3, 3)
    m = re.fullmatch(r"K(\d+),(\d+)", s)
    if m:
        return complete_bipartite(int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"([CKP])(\d+)", s)
    if m:
        n = int(m.group(2))
        return {"C": cycle, "K": complete, "P": points}[m.group(1)](n)
    m = re.fullmatch(r"(prism|cube)\((\d+)\)", s)
    if m:
        k = int(m.group(2))
        return prism(k) if m.group(1) == "prism" else hypercube(k)
    if s == "octahedron":
        return octahedron()
    if s == "tetrahedron":
        return tetrahedron()
    if s == "icosahedron":
        return icosahedron()
    if s == "trunctet":
        return truncate(tetrahedron(), "trunctet")
    if s == "truncicosa":
        return truncate(icosahedron(), "truncicosa")
    raise ValueError(f"unknown graph {spec!r}")


# metric

def geodesic_metric(g: WeightedGraph) -> MetricSpace:
    """All-pairs shortest path distances, exact."""
    if not g.is_connected():
        raise ValueError("graph is disconnected; geodesic distance would be infinite")
    n = g.n
    if g.simple:
        rows = []
        for s in range(n):
            dist = [-1] * n
            dist[s] = 0
            q = deque([s])
            while q:
                x = q.popleft()
                for y in g.adjacency[x]:
                    if dist[y] < 0:
                        dist[y] = dist[x] + 1
                        q.append(y)
            rows.append(dist)
        return MetricSpace(rows, g.labels, check=False)
    nbrs = [[(v, g.weight(u, v)) for v in g.adjacency[u]] for u in range(n)]
    rows = []
    for s in range(n):
        dist = [None] * n
        heap = [(Fraction(0), s)]
        while heap:
            d, x = heapq.heappop(heap)
            if dist[x] is not None:
                continue
            dist[x] = d
            for y, w in nbrs[x]:
                if dist[y] is None:
                    heapq.heappush(heap, (d + w, y))
        rows.append(dist)
    return MetricSpace(rows, g.labels, check=False)


# operations

def complement(g: WeightedGraph) -> WeightedGraph:
    if not g.simple:
        raise ValueError("complement is defined for simple graphs only")
    edges = [(u, v) for u, v in itertools.combinations(range(g.n), 2) if not g.has_edge(u, v)]
    return WeightedGraph(g.n, edges, g.labels, name=f"complement({g.name or '?'})")


def join(g: WeightedGraph, h: WeightedGraph) -> WeightedGraph:
    """Disjoint union plus every edge between the two parts."""
    if not (g.simple and h.simple):
        raise ValueError("join is defined for simple graphs only")
    u = disjoint_union(g, h)
    edges = dict(u.edges)
    for a in range(g.n):
        for b in range(h.n):
            edges[(a, g.n + b)] = ONE
    return WeightedGraph(u.n, edges, u.labels, name=f"join({g.name or '?'},{h.name or '?'})")


def disjoint_union(g: WeightedGraph, h: WeightedGraph) -> WeightedGraph:
    """Side by side copies; the result is usually disconnected, hence not a metric space."""
    edges = dict(g.edges)
    for (a, b), w in h.edges.items():
        edges[(g.n + a, g.n + b)] = w
    labels = [f"L{x}" for x in g.labels] + [f"R{x}" for x in h.labels]
    return WeightedGraph(g.n + h.n, edges, labels, name=f"union({g.name or '?'},{h.name or '?'})")


class ProductKind(enum.Enum):
    SHANNON = "shannon"
    TENSOR = "tensor"
    CARTESIAN = "cartesian"
    LEXICOGRAPHIC = "lexicographic"


def product(g: WeightedGraph, h: WeightedGraph, kind: ProductKind | str = ProductKind.SHANNON) -> WeightedGraph:
    """Graph product on pairs (a, b) at index a * h.n + b.

    The product of two simple graphs is simple.  Otherwise edge weights add
    the coordinate displacements, a coordinate that stays put contributing 0;
    in the lexicographic product the second coordinate contributes only when
    it moves along an edge.
    """
    kind = ProductKind(kind) if not isinstance(kind, ProductKind) else kind
    nh = h.n
    unit = g.simple and h.simple
    edges = {}

    def step(graph, x, y):
        # 0 for staying, the weight for an edge, None otherwise
        if x == y:
            return Fraction(0)
        return graph.weight(x, y)

    for a, c in itertools.product(range(g.n), repeat=2):
        sa = step(g, a, c)
        for b, d in itertools.product(range(nh), repeat=2):
            u, v = a * nh + b, c * nh + d
            if u >= v:
                continue
            sb = step(h, b, d)
            if kind is ProductKind.SHANNON:
                ok = sa is not None and sb is not None
                w = (sa or 0) + (sb or 0)
            elif kind is ProductKind.TENSOR:
                ok = a != c and b != d and sa is not None and sb is not None
                w = (sa or 0) + (sb or 0)
            elif kind is ProductKind.CARTESIAN:
                ok = (a == c and sb is not None) or (b == d and sa is not None)
                w = (sa or 0) + (sb or 0)
            else:
                ok = (a != c and sa is not None) or (a == c and b != d and sb is not None)
                w = (sa or 0) + (sb or 0)
            if ok:
                edges[(u, v)] = ONE if unit else w
    labels = [f"({x},{y})" for x in g.labels for y in h.labels]
    return WeightedGraph(g.n * nh, edges, labels, name=f"{kind.value}({g.name or '?'},{h.name or '?'})")


# Cayley graphs

def symmetrize(group: GroupTable, gens: Iterable[int]) -> list[int]:
    out = set()
    for s in gens:
        if s != group.identity:
            out.add(s)
            out.add(group.inv(s))
    return sorted(out)


def cayley_graph(group: GroupTable, gens: Iterable[int], weights: Mapping[int, object] | None = None,
                 name: str | None = None) -> WeightedGraph:
    """Edges {x, x s} for s in the symmetrized generator set, identity excluded."""
    gens = list(gens)
    sym = symmetrize(group, gens)
    if not sym and group.order > 1:
        raise ValueError("generator set is empty after removing the identity")
    if len(group.generated_subgroup(sym)) != group.order:
        raise ValueError("generators do not generate the group")
    wt = {}
    if weights:
        for s, w in weights.items():
            w = as_fraction(w)
            for t in (s, group.inv(s)):
                if t in wt and wt[t] != w:
                    raise ValueError(f"weight differs on inverse pair {s}, {group.inv(s)}")
                wt[t] = w
    edges = {}
    for x in range(group.order):
        for s in sym:
            y = group.mul(x, s)
            edges[(min(x, y), max(x, y))] = wt.get(s, ONE)
    return WeightedGraph(group.order, edges, group.labels, name=name or f"Cay({group.name or '?'})")


def product_generators(a: GroupTable, s: Iterable[int], b: GroupTable, t: Iterable[int]) -> list[int]:
    """Generators (x, y) of a x b with x in S+{1} and y in T+{1}, identity dropped.

    With this set the Cayley graph of a x b is the Shannon product of the
    Cayley graphs of the factors.
    """
    xs = set(symmetrize(a, s)) | {a.identity}
    ys = set(symmetrize(b, t)) | {b.identity}
    out = [x * b.order + y for x in sorted(xs) for y in sorted(ys)]
    return [g for g in out if g != a.identity * b.order + b.identity]


class ZigzagPolicy(enum.Enum):
    TS = "ts"                        # t s
    TST = "tst"                      # t1 s t2
    OPTIONAL_TAIL = "optional-tail"  # t1 s t2 with t2 allowed to be 1


def zigzag_generators(normal: GroupTable, s: Iterable[int], base: GroupTable, t: Iterable[int],
                      product_group: GroupTable, policy: ZigzagPolicy | str = ZigzagPolicy.TS) -> list[int]:
    policy = ZigzagPolicy(policy) if not isinstance(policy, ZigzagPolicy) else policy
    nn = normal.order
    s_elems = [base.identity * nn + x for x in sorted(set(symmetrize(normal, s)) | {normal.identity})]
    t_elems = [k * nn + normal.identity for k in symmetrize(base, t)] or [base.identity * nn + normal.identity]
    ident = product_group.identity
    mul = product_group.mul
    out = set()
    if policy is ZigzagPolicy.TS:
        out = {mul(k, x) for k in t_elems for x in s_elems}
    else:
        tails = list(t_elems)
        if policy is ZigzagPolicy.OPTIONAL_TAIL:
            tails.append(ident)
        out = {mul(mul(k1, x), k2) for k1 in t_elems for x in s_elems for k2 in tails}
    return symmetrize(product_group, out)


def zigzag_cayley(normal: GroupTable, s: Iterable[int], base: GroupTable, t: Iterable[int],
                  action: Mapping[int, Sequence[int]], policy: ZigzagPolicy | str = ZigzagPolicy.TS) -> WeightedGraph:
    """Cayley graph of the semidirect product on words built from T and S.

    TS uses t s, TST uses t1 s t2, OPTIONAL_TAIL uses t1 s t2 with t2 in T+{1}.
    """
    g = semidirect_product(normal, base, action)
    gens = zigzag_generators(normal, s, base, t, g, policy)
    if not gens:
        raise ValueError("zig-zag generator set is empty")
    return cayley_graph(g, gens, name=f"zigzag({normal.name},{base.name})")


# cliques

def maximal_cliques(g: WeightedGraph) -> list[tuple[int, ...]]:
    """Maximal cliques by Bron-Kerbosch with pivoting, each sorted."""
    adj = g.adjacency
    out = []

    def expand(r, p, x):
        if not p and not x:
            out.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda u: len(adj[u] & p))
        for v in sorted(p - adj[pivot]):
            expand(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(range(g.n)), set())
    return sorted(out)


def cliques(g: WeightedGraph, bound: int | None = None) -> list[tuple[int, ...]]:
    """All nonempty cliques as sorted tuples, ordered by size then lexicographically.

    Respects ``g.skeleton``: no clique has more than skeleton + 1 vertices.
    """
    bound = config.CLIQUE_BOUND if bound is None else bound
    cap = g.n if g.skeleton is None else g.skeleton + 1
    adj = g.adjacency
    out: list[tuple[int, ...]] = []

    def grow(clique, cands):
        out.append(clique)
        if len(out) > bound:
            raise BoundExceeded("clique count", bound, "clique enumeration")
        if len(clique) >= cap:
            return
        for v in cands:
            grow(clique + (v,), [u for u in cands if u > v and u in adj[v]])

    for v in range(g.n):
        grow((v,), sorted(u for u in adj[v] if u > v))
    out.sort(key=lambda c: (len(c), c))
    return out


def _clique_graph(g, related, name):
    cl = cliques(g)
    sets = [frozenset(c) for c in cl]
    edges = [(i, j) for i, j in itertools.combinations(range(len(cl)), 2) if related(sets[i], sets[j])]
    labels = ["{" + ",".join(g.labels[v] for v in c) + "}" for c in cl]
    return WeightedGraph(len(cl), edges, labels, name=name)


def connection_graph(g: WeightedGraph) -> WeightedGraph:
    """Cliques of g, joined when they intersect."""
    if not g.simple:
        raise ValueError("connection graph needs a simple graph")
    return _clique_graph(g, lambda a, b: bool(a & b), f"connection({g.name or '?'})")


def barycentric_refinement(g: WeightedGraph) -> WeightedGraph:
    """Cliques of g, joined when one properly contains the other."""
    if not g.simple:
        raise ValueError("Barycentric refinement needs a simple graph")
    return _clique_graph(g, lambda a, b: a < b or b < a, f"barycentric({g.name or '?'})")


# symmetry

def _weight_colors(g: WeightedGraph):
    return g.weight_matrix()


def graph_automorphisms(g: WeightedGraph, bound: int | None = None) -> PermGroup:
    """Weight-preserving vertex permutations.

    For a connected simple graph these are exactly the isometries of the
    geodesic metric; that equality is checked on the generators.
    """
    bound = config.VERTEX_BOUND if bound is None else bound
    if g.n > bound:
        raise BoundExceeded("vertex count", bound, "graph automorphisms")
    from .search import color_matrix
    gens, order = automorphism_generators(color_matrix(_weight_colors(g)))
    for p in gens:
        if any(g.weight(p[u], p[v]) != w for (u, v), w in g.edges.items()):
            raise AssertionError("search returned a non-automorphism")
    group = PermGroup(gens, degree=g.n, order_hint=order)
    if g.simple and g.is_connected() and g.n > 1:
        from .metric import isometry_group
        iso = isometry_group(geodesic_metric(g), bound)
        if iso.order != order or any(not all(g.has_edge(p[u], p[v]) for u, v in g.edges) for p in iso.generators):
            raise AssertionError("graph automorphisms differ from geodesic isometries")
    return group


def graph_isomorphism(g: WeightedGraph, h: WeightedGraph) -> Permutation | None:
    """A vertex bijection p with weight(p[u], p[v]) == weight(u, v), or None."""
    if g.n != h.n or g.edge_count != h.edge_count:
        return None
    if sorted(g.degrees()) != sorted(h.degrees()):
        return None
    a, b = joint_color_matrices(g.weight_matrix(), h.weight_matrix())
    return find_isomorphism(a, b)


def are_isomorphic_graphs(g: WeightedGraph, h: WeightedGraph) -> bool:
    return graph_isomorphism(g, h) is not None


def is_natural_graph(g: WeightedGraph, mode=CompatibilityMode.STRICT) -> NaturalnessVerdict:
    """Naturalness of the geodesic metric of a connected graph."""
    return compatible_structures(geodesic_metric(g), mode)


# balls in Cayley graphs of infinite groups

class BallFamily(enum.Enum):
    Z = "Z"
    D_INF = "D_INF"
    FREE = "FREE"
    FREE_DIHEDRAL = "FREE_DIHEDRAL"
    PSL2Z = "PSL2Z"


def _family_letters(family: BallFamily, rank: int):
    """Generator letters and the right-multiplication rule on normal forms."""
    if family is BallFamily.Z:
        return ["+", "-"], lambda w, x: _free_reduce(w, x, {"+": "-", "-": "+"})
    if family is BallFamily.D_INF:
        return ["a", "b"], lambda w, x: w[:-1] if w and w[-1] == x else w + (x,)
    if family is BallFamily.FREE:
        letters = []
        inv = {}
        for i in range(1, rank + 1):
            a, b = f"a{i}", f"A{i}"
            letters += [a, b]
            inv[a], inv[b] = b, a
        return letters, lambda w, x: _free_reduce(w, x, inv)
    if family is BallFamily.FREE_DIHEDRAL:
        letters = [f"a{i}" for i in range(1, rank + 1)]
        return letters, lambda w, x: w[:-1] if w and w[-1] == x else w + (x,)
    if family is BallFamily.PSL2Z:
        return ["x", "y", "Y"], _psl_mul
    raise ValueError(family)


def _free_reduce(w, x, inv):
    if w and w[-1] == inv[x]:
        return w[:-1]
    return w + (x,)


def _psl_mul(w, x):
    # normal forms alternate x with y or Y (x^2 = y^3 = 1, Y = y^-1 = y^2)
    if not w:
        return (x,)
    last = w[-1]
    if x == "x":
        return w[:-1] if last == "x" else w + ("x",)
    if last == "x":
        return w + (x,)
    combined = {("y", "y"): "Y", ("Y", "Y"): "y", ("y", "Y"): None, ("Y", "y"): None}[(last, x)]
    return w[:-1] if combined is None else w[:-1] + (combined,)


def cayley_ball(family: BallFamily | str, radius: int, rank: int = 2,
                weights: Mapping[str, object] | None = None) -> WeightedGraph:
    """The ball of word-length radius ``radius`` around the identity.

    Elements are normal-form words; edges join w and w x for each generator
    letter x when both ends lie in the ball.
    """
    family = BallFamily(family) if not isinstance(family, BallFamily) else family
    letters, mul = _family_letters(family, rank)
    wt = {x: as_fraction(weights[x]) if weights and x in weights else ONE for x in letters}
    for x in letters:
        y = _letter_inverse(family, x)
        if wt[x] != wt[y]:
            raise ValueError(f"weights differ on inverse letters {x}, {y}")
    index = {(): 0}
    frontier = [()]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for x in letters:
                v = mul(w, x)
                if v not in index:
                    index[v] = len(index)
                    if len(index) > config.VERTEX_BOUND * 1000:
                        raise BoundExceeded("ball size", config.VERTEX_BOUND * 1000, "Cayley ball")
                    nxt.append(v)
        frontier = nxt
    edges = {}
    for w, i in index.items():
        for x in letters:
            j = index.get(mul(w, x))
            if j is not None and j != i:
                edges[(min(i, j), max(i, j))] = wt[x]
    labels = ["".join(w) or "e" for w in index]
    return WeightedGraph(len(index), edges, labels, name=f"ball({family.value},{radius})")


def _letter_inverse(family, x):
    if family is BallFamily.Z:
        return {"+": "-", "-": "+"}[x]
    if family is BallFamily.FREE:
        return x.swapcase()
    if family is BallFamily.PSL2Z:
        return {"x": "x", "y": "Y", "Y": "y"}[x]
    return x


def to_dot(g: WeightedGraph) -> str:
    lines = [f"graph {_dot_id(g.name or 'G')} {{"]
    for v in range(g.n):
        lines.append(f'  {v} [label="{g.labels[v]}"];')
    for (u, v), w in sorted(g.edges.items()):
        attr = "" if w == 1 else f' [label="{w}"]'
        lines.append(f"  {u} -- {v}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_id(name):
    return '"' + name.replace('"', "'") + '"'
