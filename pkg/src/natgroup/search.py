"""Individualization-refinement search over colored complete digraphs.

A "color matrix" is an n x n integer matrix; the morphisms searched for are
permutations p with ``A[i][j] == B[p[i]][p[j]]`` for all i, j.  Isometries of
a finite metric space (colors = distance ranks) and automorphisms of a
weighted graph (colors = weight ranks, 0 for non-edges) are both instances.
"""
from __future__ import annotations

from collections import Counter
from typing import Iterator, Sequence

from .perm import Permutation


def color_matrix(values: Sequence[Sequence]) -> list[list[int]]:
    """Replace hashable entries by dense integer codes, in sorted value order."""
    distinct = sorted({v for row in values for v in row}, key=_sort_key)
    code = {v: i for i, v in enumerate(distinct)}
    return [[code[v] for v in row] for row in values]


def joint_color_matrices(a, b):
    distinct = sorted({v for m in (a, b) for row in m for v in row}, key=_sort_key)
    code = {v: i for i, v in enumerate(distinct)}
    return ([[code[v] for v in row] for row in a], [[code[v] for v in row] for row in b])


def _sort_key(v):
    return (v is None, v if v is not None else 0)


def _refine(mat: list[list[int]], cells: list[list[int]]):
    """Refine an ordered partition to an equitable one.

    Returns (cells, trace).  The trace records every split signature, so two
    partitions that can be matched by an isomorphism produce equal traces.
    """
    n = len(mat)
    trace = []
    while True:
        where = [0] * n
        for ci, cell in enumerate(cells):
            for v in cell:
                where[v] = ci
        new_cells = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                row = mat[v]
                sig = tuple(sorted(Counter((where[u], row[u], mat[u][v]) for u in range(n)).items()))
                groups.setdefault(sig, []).append(v)
            if len(groups) > 1:
                changed = True
                keys = sorted(groups)
                trace.append(tuple((k, len(groups[k])) for k in keys))
                new_cells.extend(groups[k] for k in keys)
            else:
                new_cells.append(cell)
        cells = new_cells
        if not changed:
            trace.append(("stable", len(cells)))
            return cells, trace


def _initial(mat):
    n = len(mat)
    groups: dict[tuple, list[int]] = {}
    for v in range(n):
        groups.setdefault((mat[v][v], tuple(sorted(Counter(mat[v]).items()))), []).append(v)
    keys = sorted(groups)
    return [groups[k] for k in keys], [tuple((k, len(groups[k])) for k in keys)]


def _individualize(cells, ci, v):
    cell = cells[ci]
    rest = [u for u in cell if u != v]
    return cells[:ci] + [[v], rest] + cells[ci + 1:]


def iter_isomorphisms(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Iterator[Permutation]:
    """Yield every permutation p with a[i][j] == b[p[i]][p[j]], each exactly once."""
    n = len(a)
    if len(b) != n:
        return
    if n == 0:
        yield Permutation(())
        return
    a = [list(r) for r in a]
    b = [list(r) for r in b]
    ca, ta = _initial(a)
    cb, tb = _initial(b)
    if ta != tb:
        return
    ca, ta = _refine(a, ca)
    cb, tb = _refine(b, cb)
    if ta != tb:
        return
    yield from _search(a, b, ca, cb)


def _search(a, b, ca, cb):
    if all(len(c) == 1 for c in ca):
        images = [0] * len(a)
        for x, y in zip(ca, cb):
            images[x[0]] = y[0]
        p = Permutation._raw(images)
        if all(a[i][j] == b[p[i]][p[j]] for i in range(len(a)) for j in range(len(a))):
            yield p
        return
    # target cell: first smallest non-singleton, fewer branches
    ci = min((i for i, c in enumerate(ca) if len(c) > 1), key=lambda i: (len(ca[i]), i))
    v = ca[ci][0]
    na, ta = _refine(a, _individualize(ca, ci, v))
    for w in cb[ci]:
        nb, tb = _refine(b, _individualize(cb, ci, w))
        if ta == tb and [len(c) for c in na] == [len(c) for c in nb]:
            yield from _search(a, b, na, nb)


def automorphisms(mat: Sequence[Sequence[int]]) -> list[Permutation]:
    """Every automorphism, by exhaustive search (use for small groups and oracles)."""
    return sorted(iter_isomorphisms(mat, mat))


def automorphism_generators(mat: Sequence[Sequence[int]]) -> tuple[list[Permutation], int]:
    """A strong generating set of Aut(mat) and the group order.

    Walks the first path of the search tree, then for each level from the
    deepest up looks for one automorphism per point of the target cell that
    is not yet in the basic orbit of the individualized vertex.
    """
    a = [list(r) for r in mat]
    n = len(a)
    if n == 0:
        return [], 1
    cells, _ = _initial(a)
    cells, _ = _refine(a, cells)
    path = []
    while any(len(c) > 1 for c in cells):
        ci = min((i for i, c in enumerate(cells) if len(c) > 1), key=lambda i: (len(cells[i]), i))
        v = cells[ci][0]
        nxt, trace = _refine(a, _individualize(cells, ci, v))
        path.append((cells, ci, v, nxt, trace))
        cells = nxt
    gens: list[Permutation] = []
    order = 1
    for before, ci, v, after, ta in reversed(path):
        orbit = _orbit(v, gens)
        for w in before[ci]:
            if w in orbit:
                continue
            nb, tb = _refine(a, _individualize(before, ci, w))
            if ta != tb or [len(c) for c in after] != [len(c) for c in nb]:
                continue
            g = next(_search(a, a, after, nb), None)
            if g is not None:
                gens.append(g)
                orbit = _orbit(v, gens)
        order *= len(orbit)
    return gens, order


def _orbit(v, gens):
    seen = {v}
    todo = [v]
    while todo:
        x = todo.pop()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def find_isomorphism(a, b) -> Permutation | None:
    return next(iter_isomorphisms(a, b), None)
