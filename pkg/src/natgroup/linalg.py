"""Exact linear algebra over the rationals.

Sparse rows are dicts mapping column index to a nonzero Fraction.  Boundary
matrices are very sparse with entries +-1, so sparse elimination stays cheap.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def rref(rows: Sequence[dict], ncols: int) -> tuple[list[dict], list[int]]:
    """Reduced row echelon form of sparse rows; returns (pivot rows, pivot columns)."""
    work = [{c: Fraction(v) for c, v in r.items() if v} for r in rows]
    work = [r for r in work if r]
    pivots: dict[int, dict] = {}
    for row in work:
        # eliminate existing pivots from this row
        for c in sorted(set(row) & pivots.keys()):
            if c in row:
                _axpy(row, -row[c], pivots[c])
        if not row:
            continue
        c = min(row)
        inv = 1 / row[c]
        row = {k: v * inv for k, v in row.items()}
        for other in pivots.values():
            if c in other:
                _axpy(other, -other[c], row)
        pivots[c] = row
    cols = sorted(pivots)
    return [pivots[c] for c in cols], cols


def _axpy(target: dict, factor: Fraction, source: dict):
    for k, v in source.items():
        nv = target.get(k, 0) + factor * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


def rank(rows: Sequence[dict], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[dict], ncols: int) -> list[list[Fraction]]:
    """A basis of {x : A x = 0}, one dense vector per free column."""
    red, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for row, p in zip(red, pivots):
            if free in row:
                vec[p] = -row[free]
        basis.append(vec)
    return basis


def bareiss_rank(matrix: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    m = [list(map(int, r)) for r in matrix]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                m[i][j] = (m[i][j] * m[r][c] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        r += 1
        if r == nrows:
            break
    return r


def solve_in_basis(basis: list[list[Fraction]], vector: list[Fraction]) -> list[Fraction]:
    """Coefficients a with sum a_i basis_i == vector; raises if not in the span."""
    k = len(basis)
    if k == 0:
        if any(vector):
            raise ValueError("vector not in the span")
        return []
    n = len(vector)
    # augmented system: columns are basis vectors, rows are coordinates
    rows = []
    for i in range(n):
        row = {j: basis[j][i] for j in range(k) if basis[j][i]}
        if vector[i]:
            row[k] = vector[i]
        if row:
            rows.append(row)
    red, pivots = rref(rows, k + 1)
    if k in pivots:
        raise ValueError("vector not in the span")
    coeffs = [Fraction(0)] * k
    for row, p in zip(red, pivots):
        coeffs[p] = row.get(k, Fraction(0))
    return coeffs
