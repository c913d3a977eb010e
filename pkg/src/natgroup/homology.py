"""Clique complexes, Betti numbers, curvature and Lefschetz numbers.

Simplices are strictly increasing vertex tuples, which fixes their
orientation.  The k-th boundary maps k-simplices to (k-1)-simplices with
sign (-1)^i for the face that drops the i-th vertex.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import config
from .graph import WeightedGraph, cliques
from .linalg import bareiss_rank, nullspace, rank, solve_in_basis
from .perm import Permutation, PermGroup


class ChainComplex:
    """Oriented simplices of a simplicial complex with sparse boundary maps."""

    def __init__(self, simplices: Sequence[Sequence[int]]):
        by_dim: dict[int, list[tuple[int, ...]]] = {}
        for s in simplices:
            t = tuple(s)
            if list(t) != sorted(set(t)) or not t:
                raise ValueError(f"simplex {s} must be a nonempty increasing tuple")
            by_dim.setdefault(len(t) - 1, []).append(t)
        top = max(by_dim) if by_dim else -1
        self.simplices = [sorted(set(by_dim.get(k, []))) for k in range(top + 1)]
        self.index = [{s: i for i, s in enumerate(layer)} for layer in self.simplices]
        for k in range(1, top + 1):
            for s in self.simplices[k]:
                for face in _faces(s):
                    if face not in self.index[k - 1]:
                        raise ValueError(f"face {face} of {s} missing")
        self._boundary: dict[int, list[dict]] = {}
        self._betti = None

    @property
    def dimension(self) -> int:
        return len(self.simplices) - 1

    @property
    def f_vector(self) -> list[int]:
        return [len(layer) for layer in self.simplices]

    def size(self) -> int:
        return sum(self.f_vector)

    def all_simplices(self):
        for layer in self.simplices:
            yield from layer

    def boundary(self, k: int) -> list[dict]:
        """Sparse columns of the k-th boundary: column j maps face index to sign."""
        if k not in self._boundary:
            cols = []
            if 1 <= k <= self.dimension:
                idx = self.index[k - 1]
                for s in self.simplices[k]:
                    cols.append({idx[f]: (-1) ** i for i, f in enumerate(_faces(s))})
            self._boundary[k] = cols
        return self._boundary[k]

    def boundary_matrix(self, k: int) -> list[list[int]]:
        """Dense (f_{k-1} x f_k) integer matrix of the k-th boundary."""
        rows = len(self.simplices[k - 1]) if 1 <= k <= self.dimension + 1 else 0
        cols = self.boundary(k)
        m = [[0] * len(cols) for _ in range(rows)]
        for j, col in enumerate(cols):
            for i, v in col.items():
                m[i][j] = v
        return m

    def _rank_boundary(self, k: int) -> int:
        if k < 1 or k > self.dimension:
            return 0
        # rank of the transpose equals rank; columns are sparse rows of it
        return rank(self.boundary(k), len(self.simplices[k - 1]))

    def hodge_kernel(self, k: int) -> list[list[Fraction]]:
        """Basis of harmonic k-forms: ker of boundary_k and of its adjoint coboundary."""
        n = len(self.simplices[k])
        rows = []
        # boundary_k x = 0: one equation per (k-1)-simplex
        if k >= 1:
            eqs: dict[int, dict] = {}
            for j, col in enumerate(self.boundary(k)):
                for i, v in col.items():
                    eqs.setdefault(i, {})[j] = v
            rows.extend(eqs.values())
        # boundary_{k+1}^T x = 0: one equation per (k+1)-simplex
        if k + 1 <= self.dimension:
            rows.extend(self.boundary(k + 1))
        return nullspace(rows, n)

    def laplacian(self, k: int) -> list[list[int]]:
        """Dense Hodge Laplacian on k-forms (for small complexes and cross-checks)."""
        n = len(self.simplices[k])
        lap = [[0] * n for _ in range(n)]
        if k >= 1:
            cols = self.boundary(k)
            for a in range(n):
                for b in range(n):
                    ca, cb = cols[a], cols[b]
                    lap[a][b] += sum(v * cb[i] for i, v in ca.items() if i in cb)
        if k + 1 <= self.dimension:
            for col in self.boundary(k + 1):
                items = list(col.items())
                for i, v in items:
                    for j, w in items:
                        lap[i][j] += v * w
        return lap


def _faces(s: tuple) -> list[tuple]:
    return [s[:i] + s[i + 1:] for i in range(len(s))]


def clique_complex(g: WeightedGraph, bound: int | None = None) -> ChainComplex:
    """All cliques of g as simplices (capped by ``g.skeleton`` when set)."""
    if not g.simple:
        raise ValueError("clique complex needs a simple graph")
    bound = config.CLIQUE_BOUND if bound is None else bound
    return ChainComplex(cliques(g, bound))


def betti(c: ChainComplex) -> list[int]:
    """b_k = f_k - rank(boundary_k) - rank(boundary_{k+1}), the kernel dimension of L_k."""
    if c._betti is None:
        ranks = [c._rank_boundary(k) for k in range(c.dimension + 2)]
        c._betti = [c.f_vector[k] - ranks[k] - ranks[k + 1] for k in range(c.dimension + 1)]
        if euler_characteristic(c) != sum((-1) ** k * b for k, b in enumerate(c._betti)):
            raise AssertionError("Euler-Poincare check failed")
    return list(c._betti)


def betti_from_laplacian(c: ChainComplex) -> list[int]:
    """Kernel dimensions of the dense Hodge Laplacians, by fraction-free elimination."""
    return [len(c.simplices[k]) - bareiss_rank(c.laplacian(k)) for k in range(c.dimension + 1)]


def euler_characteristic(c: ChainComplex) -> int:
    return sum((-1) ** k * f for k, f in enumerate(c.f_vector))


def f_function(c: ChainComplex) -> list[int]:
    """Coefficients of 1 + f_0 t + f_1 t^2 + ..., lowest degree first."""
    return [1] + c.f_vector


def gauss_bonnet_curvature(c: ChainComplex) -> list[Fraction]:
    """K(v) = sum_k (-1)^k f_{k-1}(S(v)) / (k+1) with f_{-1} = 1.

    The (k-1)-simplices of the unit sphere S(v) are the k-simplices through v,
    so the sum runs over simplices containing v.
    """
    if not c.simplices:
        return []
    n = len(c.simplices[0])
    curv = [Fraction(0)] * n
    vertex_index = c.index[0]
    for k, layer in enumerate(c.simplices):
        w = Fraction((-1) ** k, k + 1)
        for s in layer:
            for v in s:
                curv[vertex_index[(v,)]] += w
    if sum(curv) != euler_characteristic(c):
        raise AssertionError("Gauss-Bonnet sum differs from the Euler characteristic")
    return curv


def induced_action(c: ChainComplex, t: Sequence[int], k: int) -> list[tuple[int, int]]:
    """For each k-simplex, (index of its image, orientation sign)."""
    out = []
    idx = c.index[k]
    for s in c.simplices[k]:
        image = [t[v] for v in s]
        target = tuple(sorted(image))
        j = idx.get(target)
        if j is None:
            raise ValueError(f"map is not simplicial: {s} -> {image}")
        out.append((j, _sort_sign(image)))
    return out


def _sort_sign(seq: Sequence[int]) -> int:
    # parity of the permutation that sorts seq
    order = sorted(range(len(seq)), key=lambda i: seq[i])
    return Permutation._raw(order).sign()


def lefschetz_fixed_points(c: ChainComplex, t: Sequence[int]) -> tuple[int, list[tuple[tuple[int, ...], int]]]:
    """Sum of (-1)^dim(y) * sign(t on y) over simplices y with t(y) = y."""
    total = 0
    fixed = []
    for k in range(c.dimension + 1):
        for i, (j, sign) in enumerate(induced_action(c, t, k)):
            if i == j:
                idx = (-1) ** k * sign
                fixed.append((c.simplices[k][i], idx))
                total += idx
    return total, fixed


def lefschetz_cohomological(c: ChainComplex, t: Sequence[int]) -> int:
    """Super-trace of t on harmonic forms: sum_k (-1)^k tr(t | ker L_k)."""
    total = Fraction(0)
    for k in range(c.dimension + 1):
        basis = c.hodge_kernel(k)
        if not basis:
            continue
        action = induced_action(c, t, k)
        tr = Fraction(0)
        for b_idx, vec in enumerate(basis):
            image = [Fraction(0)] * len(vec)
            for i, (j, sign) in enumerate(action):
                if vec[i]:
                    image[j] += sign * vec[i]
            coeffs = solve_in_basis(basis, image)
            tr += coeffs[b_idx]
        total += (-1) ** k * tr
    if total.denominator != 1:
        raise AssertionError("non-integral trace")
    return int(total)


@dataclass
class LefschetzResult:
    cohomological: int
    fixed_point: int
    fixed_simplices: list

    @property
    def agree(self) -> bool:
        return self.cohomological == self.fixed_point


def lefschetz_number(c: ChainComplex, t: Sequence[int]) -> LefschetzResult:
    """Lefschetz number by harmonic projection and by fixed simplices; both returned."""
    fp, fixed = lefschetz_fixed_points(c, t)
    coh = lefschetz_cohomological(c, t)
    return LefschetzResult(coh, fp, fixed)


def lefschetz_group_audit(g: WeightedGraph, group: PermGroup) -> dict:
    """Per-element Lefschetz numbers of a group of graph automorphisms, and their total."""
    c = clique_complex(g)
    for p in group.generators:
        if any(not g.has_edge(p[u], p[v]) for u, v in g.edges):
            raise ValueError("group element is not a graph automorphism")
    elements = []
    total = 0
    ok = True
    for p in group.sorted_elements():
        res = lefschetz_number(c, p)
        ok = ok and res.agree
        total += res.cohomological
        elements.append({
            "label": Permutation._raw(p).cycle_string(),
            "lefschetz": res.cohomological,
            "fixed_simplices": len(res.fixed_simplices),
            "index_sum": res.fixed_point,
        })
    return {
        "elements": elements,
        "total": total,
        "average": str(Fraction(total, len(elements))),
        "group_order": len(elements),
        "vertices": g.n,
        "theorem_ok": ok,
    }


def homology_report(g: WeightedGraph) -> dict:
    c = clique_complex(g)
    return {
        "f_vector": c.f_vector,
        "betti": betti(c),
        "euler": euler_characteristic(c),
        "curvature": [str(k) for k in gauss_bonnet_curvature(c)],
        "f_function_coeffs": f_function(c),
    }
