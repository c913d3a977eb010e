"""Finite metric spaces, isometry groups and the naturalness decision.

A metric space is natural when exactly one isomorphism type of group
structure on its points is compatible with the distances.  Candidates are
the regular subgroups of the isometry group: a regular subgroup H and the
basepoint 0 give the product ``x * y = g_x(y)`` where ``g_x`` is the unique
element of H with ``g_x(0) = x``.  Left translations of that product are the
elements of H, so they are isometries by construction.  In STRICT mode the
right translations ``y -> y * h`` and the inversion must preserve distances
too; WEAK mode accepts every regular subgroup.

Any other basepoint b gives an isomorphic structure (conjugate by an
isometry sending 0 to b), so fixing 0 loses nothing.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import config
from .config import BoundExceeded
from .group import GroupTable, are_isomorphic, identify, inverse_closed_classes, invariants
from .perm import Permutation, PermGroup, regular_subgroups
from .search import automorphism_generators, color_matrix


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating-point distances are not accepted, use Fraction or 'p/q'")
    return Fraction(value)


class MetricSpace:
    """n points with exact rational distances.

    The constructor checks symmetry, positivity off the diagonal and the
    triangle inequality, all exactly.
    """

    def __init__(self, dist: Sequence[Sequence], labels: Sequence[str] | None = None, check: bool = True):
        rows = tuple(tuple(as_fraction(v) for v in row) for row in dist)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("distance matrix must be square")
        self.dist = rows
        self.n = n
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(self.labels) != n:
            raise ValueError("label count does not match point count")
        if check:
            self._check()
        self._colors = None

    def _check(self):
        d, n = self.dist, self.n
        for i in range(n):
            if d[i][i] != 0:
                raise ValueError(f"d({i},{i}) must be 0")
            for j in range(i + 1, n):
                if d[i][j] != d[j][i]:
                    raise ValueError(f"distance not symmetric at ({i},{j})")
                if d[i][j] <= 0:
                    raise ValueError(f"distance between distinct points {i},{j} must be positive")
        for k in range(n):
            dk = d[k]
            for i in range(n):
                dik = d[i][k]
                di = d[i]
                for j in range(i + 1, n):
                    if di[j] > dik + dk[j]:
                        raise ValueError(f"triangle inequality fails: d({i},{j}) > d({i},{k}) + d({k},{j})")

    @property
    def colors(self) -> list[list[int]]:
        if self._colors is None:
            self._colors = color_matrix(self.dist)
        return self._colors

    def diameter(self) -> Fraction:
        return max((v for row in self.dist for v in row), default=Fraction(0))

    def distance_values(self) -> list[Fraction]:
        return sorted({v for row in self.dist for v in row if v})

    def relabel(self, perm: Sequence[int]) -> "MetricSpace":
        """The same space with old point i renamed perm[i]."""
        inv = [0] * self.n
        for i, v in enumerate(perm):
            inv[v] = i
        dist = [[self.dist[inv[i]][inv[j]] for j in range(self.n)] for i in range(self.n)]
        return MetricSpace(dist, [self.labels[inv[i]] for i in range(self.n)], check=False)

    def preserves(self, p: Sequence[int]) -> bool:
        d = self.dist
        n = self.n
        return all(d[p[i]][p[j]] == d[i][j] for i in range(n) for j in range(i + 1, n))

    def __eq__(self, other):
        if not isinstance(other, MetricSpace):
            return NotImplemented
        return self.dist == other.dist

    def __hash__(self):
        return hash(self.dist)

    def __repr__(self):
        return f"MetricSpace(n={self.n}, values={len(self.distance_values())})"


class CompatibilityMode(enum.Enum):
    STRICT = "strict"
    WEAK = "weak"

    @classmethod
    def parse(cls, text) -> "CompatibilityMode":
        if isinstance(text, cls):
            return text
        return cls(str(text).lower())


@dataclass
class StructureClass:
    """One isomorphism type of compatible group structure."""
    table: GroupTable
    witness: PermGroup
    label: str
    count: int = 1   # regular subgroups in this class that survived

    def to_json(self) -> dict:
        return {
            "order": self.table.order,
            "census": [list(p) for p in self.table.order_census()],
            "label": self.label,
            "basepoint": 0,
            "witness_generators": [list(g) for g in self.witness.generators],
            "subgroups": self.count,
        }


@dataclass
class NaturalnessVerdict:
    mode: CompatibilityMode
    isometry_order: int
    structures: list[StructureClass]
    pretests: dict
    survivors: list[PermGroup] = field(default_factory=list)

    @property
    def natural(self) -> bool:
        return len(self.structures) == 1

    def labels(self) -> list[str]:
        return [s.label for s in self.structures]

    def to_json(self) -> dict:
        return {
            "natural": self.natural,
            "mode": self.mode.value,
            "isometry_order": self.isometry_order,
            "classes": [s.to_json() for s in self.structures],
            "pretests": self.pretests,
        }


def isometry_group(m: MetricSpace, bound: int | None = None) -> PermGroup:
    """All distance-preserving permutations of the points."""
    bound = config.VERTEX_BOUND if bound is None else bound
    if m.n > bound:
        raise BoundExceeded("point count", bound, "isometry group")
    if m.n == 0:
        raise ValueError("empty metric space")
    gens, order = automorphism_generators(m.colors)
    for g in gens:
        if not m.preserves(g):
            raise AssertionError("search returned a non-isometry")
    return PermGroup(gens, degree=m.n, order_hint=order)


def structure_table(h: PermGroup, n: int) -> GroupTable:
    """The product x * y = g_x(y) induced by a regular subgroup and basepoint 0."""
    by_point = {g[0]: g for g in h.elements}
    rows = [list(by_point[x]) for x in range(n)]
    return GroupTable(rows, identity=0, check=False)


def passes_strict(m: MetricSpace, table: GroupTable) -> bool:
    """Right translations and inversion of ``table`` preserve the distances."""
    n = table.order
    inversion = [table.inv(x) for x in range(n)]
    if not m.preserves(inversion):
        return False
    rows = table.rows
    for h in range(n):
        if not m.preserves([rows[x][h] for x in range(n)]):
            return False
    return True


def _class_key(table: GroupTable):
    return (table.order_census(), tuple(table.table.flatten().tolist()))


def compatible_structures(m: MetricSpace, mode: CompatibilityMode | str = CompatibilityMode.STRICT,
                          bound: int | None = None, pretests_only: bool = False) -> NaturalnessVerdict:
    """Group structures on the points of ``m`` compatible with its distances."""
    mode = CompatibilityMode.parse(mode)
    try:
        isom = isometry_group(m, bound)
    except BoundExceeded as exc:
        exc.stage = exc.stage or "isometry group"
        raise
    order = isom.order
    transitive = isom.is_transitive()
    lagrange = order % m.n == 0
    pretests = {"transitive": transitive, "lagrange": lagrange}
    if not (transitive and lagrange) or pretests_only:
        return NaturalnessVerdict(mode, order, [], pretests)
    try:
        subgroups = regular_subgroups(isom)
    except BoundExceeded as exc:
        raise BoundExceeded(exc.what, exc.limit, "regular subgroups") from exc
    pretests["regular_subgroups"] = len(subgroups)
    survivors = []
    tables = []
    for h in subgroups:
        t = structure_table(h, m.n)
        if mode is CompatibilityMode.STRICT and not passes_strict(m, t):
            continue
        survivors.append(h)
        tables.append(t)
    pretests["survivors"] = len(survivors)
    reps: list[tuple[GroupTable, PermGroup, int]] = []
    inv_cache = []
    for h, t in zip(survivors, tables):
        key = invariants(t)
        for idx, (rt, rh, count) in enumerate(reps):
            if inv_cache[idx] == key and are_isomorphic(t, rt) is not None:
                # keep the canonically smallest representative
                if _class_key(t) < _class_key(rt):
                    reps[idx] = (t, h, count + 1)
                else:
                    reps[idx] = (rt, rh, count + 1)
                break
        else:
            reps.append((t, h, 1))
            inv_cache.append(key)
    reps.sort(key=lambda r: _class_key(r[0]))
    structures = [StructureClass(t, h, identify(t), c) for t, h, c in reps]
    return NaturalnessVerdict(mode, order, structures, pretests, survivors)


def is_natural_metric(m: MetricSpace, mode=CompatibilityMode.STRICT) -> NaturalnessVerdict:
    return compatible_structures(m, mode)


def generic_biinvariant_metric(g: GroupTable) -> MetricSpace:
    """d(x, y) = l(x^-1 y) with l = 1 + i/(k+1) on the i-th non-trivial inverse-closed class.

    All values lie strictly between 1 and 2, so the triangle inequality holds.
    """
    classes = [c for c in inverse_closed_classes(g) if g.identity not in c]
    k = len(classes)
    length = {g.identity: Fraction(0)}
    for i, cls in enumerate(classes, start=1):
        for x in cls:
            length[x] = 1 + Fraction(i, k + 1)
    rows = g.rows
    dist = [[length[rows[g.inv(x)][y]] for y in range(g.order)] for x in range(g.order)]
    return MetricSpace(dist, labels=g.labels, check=False)


def generic_left_invariant_metric(g: GroupTable) -> MetricSpace:
    """d(x, y) = l(x^-1 y) with l injective on the pairs {x, x^-1}.

    The coarsest structure a left-invariant metric must respect, so it has
    the smallest isometry group among metrics whose left translations are
    isometries.
    """
    pairs = []
    seen = {g.identity}
    for x in range(g.order):
        if x not in seen:
            seen.update((x, g.inv(x)))
            pairs.append((x, g.inv(x)))
    k = len(pairs)
    length = {g.identity: Fraction(0)}
    for i, pair in enumerate(pairs, start=1):
        for x in pair:
            length[x] = 1 + Fraction(i, k + 1)
    rows = g.rows
    dist = [[length[rows[g.inv(x)][y]] for y in range(g.order)] for x in range(g.order)]
    return MetricSpace(dist, labels=g.labels, check=False)


class LemmaViolation(RuntimeError):
    """The group was not among its own compatible structures."""


def is_natural_group(g: GroupTable, mode=CompatibilityMode.STRICT, pretests_only: bool = False) -> NaturalnessVerdict:
    """Decide naturalness of ``g`` through its generic bi-invariant metric.

    Every metric for which g's own translations and inversion are isometries
    has the form l(x^-1 y) with l constant on inverse-closed conjugacy
    classes.  The generic metric separates all those classes, so its
    isometry group and competitor set are the smallest possible, and g is
    natural exactly when the generic metric is.  The mode only changes what
    competitors must satisfy.
    """
    mode = CompatibilityMode.parse(mode)
    if g.order > config.DECISION_BOUND:
        raise BoundExceeded("group order", config.DECISION_BOUND, "naturalness decision")
    m = generic_biinvariant_metric(g)
    verdict = compatible_structures(m, mode, bound=max(config.VERTEX_BOUND, config.DECISION_BOUND),
                                    pretests_only=pretests_only)
    if pretests_only:
        return verdict
    if not any(are_isomorphic(g, s.table) is not None for s in verdict.structures):
        raise LemmaViolation(f"{g.name or 'group'} missing from its own compatible structures")
    return verdict


def certifies(m: MetricSpace, table: GroupTable, mode=CompatibilityMode.STRICT) -> bool:
    """Whether ``table``, laid out on the points of ``m`` as given, is a compatible structure.

    Two certified structures that are not isomorphic prove non-naturalness
    without enumerating the isometry group.
    """
    if table.order != m.n:
        return False
    if not all(m.preserves(table.left_translation(x)) for x in range(m.n)):
        return False
    if CompatibilityMode.parse(mode) is CompatibilityMode.STRICT:
        return passes_strict(m, table)
    return True


class ProductForm(enum.Enum):
    SUM = "sum"
    MAX = "max"


def product_metric(m1: MetricSpace, m2: MetricSpace, form: ProductForm | str = ProductForm.SUM,
                   scale=None) -> MetricSpace:
    """Metric on pairs, point (a, b) at index a * m2.n + b.

    SUM: d1 + k d2 with k defaulting to 1 + diameter(m1).  MAX: max(d1, r d2)
    with r defaulting to 1.
    """
    form = ProductForm(form) if not isinstance(form, ProductForm) else form
    if scale is None:
        scale = 1 + m1.diameter() if form is ProductForm.SUM else Fraction(1)
    scale = as_fraction(scale)
    if scale <= 0:
        raise ValueError("scale must be positive")
    n1, n2 = m1.n, m2.n
    dist = []
    for a in range(n1):
        for b in range(n2):
            row = []
            for c in range(n1):
                d1 = m1.dist[a][c]
                for e in range(n2):
                    d2 = scale * m2.dist[b][e]
                    row.append(d1 + d2 if form is ProductForm.SUM else max(d1, d2))
            dist.append(row)
    labels = [f"({x},{y})" for x in m1.labels for y in m2.labels]
    return MetricSpace(dist, labels)


def discrete_metric(n: int) -> MetricSpace:
    return MetricSpace([[0 if i == j else 1 for j in range(n)] for i in range(n)])
