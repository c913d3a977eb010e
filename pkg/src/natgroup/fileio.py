"""Plain-text formats for metrics, graphs, group tables and permutations.

metric:  ``metric n``, then n label lines, then n rows of n rationals (``p/q`` or integers)
graph:   ``graph n [simple|weighted]``, optional ``label i name`` and ``skeleton k`` lines,
         then edge lines ``u v [p/q]``
table:   ``n``, then n rows of n element indices (identity is the element whose row is 0..n-1)
perms:   one image array per line

A graph file may also hold the JSON object written by ``graph_to_json``.

Blank lines and ``#`` comments are ignored everywhere.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .graph import WeightedGraph
from .group import GroupTable
from .metric import MetricSpace
from .perm import Permutation


class FormatError(ValueError):
    pass


def _lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _read(path) -> str:
    return Path(path).read_text()


def parse_metric(text: str) -> MetricSpace:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty metric file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "metric":
        raise FormatError("metric file must start with 'metric n'")
    n = int(head[1])
    if len(lines) != 1 + 2 * n:
        raise FormatError(f"expected {n} label lines and {n} distance rows")
    labels = lines[1:1 + n]
    rows = []
    for line in lines[1 + n:]:
        vals = line.split()
        if len(vals) != n:
            raise FormatError(f"distance row has {len(vals)} entries, expected {n}")
        rows.append([Fraction(v) for v in vals])
    return MetricSpace(rows, labels)


def format_metric(m: MetricSpace) -> str:
    out = [f"metric {m.n}"]
    out += [str(lab) for lab in m.labels]
    out += [" ".join(str(v) for v in row) for row in m.dist]
    return "\n".join(out) + "\n"


def graph_to_json(g: WeightedGraph) -> dict:
    return {
        "name": g.name,
        "n": g.n,
        "simple": g.simple,
        "labels": list(g.labels),
        "skeleton": g.skeleton,
        "edges": [[u, v, str(w)] for (u, v), w in sorted(g.edges.items())],
    }


def graph_from_json(data: dict) -> WeightedGraph:
    try:
        edges = {(int(u), int(v)): Fraction(w) for u, v, w in data["edges"]}
        return WeightedGraph(int(data["n"]), edges, data.get("labels"), name=data.get("name"),
                             skeleton=data.get("skeleton"))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad JSON graph: {exc}") from exc


def parse_graph(text: str) -> WeightedGraph:
    if text.lstrip().startswith("{"):
        try:
            return graph_from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise FormatError(f"bad JSON graph: {exc}") from exc
    lines = _lines(text)
    if not lines:
        raise FormatError("empty graph file")
    head = lines[0].split()
    if head[0] != "graph" or len(head) not in (2, 3):
        raise FormatError("graph file must start with 'graph n [simple|weighted]'")
    n = int(head[1])
    kind = head[2] if len(head) == 3 else "simple"
    if kind not in ("simple", "weighted"):
        raise FormatError(f"unknown graph kind {kind!r}")
    labels = [str(i) for i in range(n)]
    skeleton = None
    edges = {}
    for line in lines[1:]:
        parts = line.split()
        if parts[0] == "label":
            labels[int(parts[1])] = " ".join(parts[2:])
        elif parts[0] == "skeleton":
            skeleton = int(parts[1])
        else:
            if len(parts) not in (2, 3):
                raise FormatError(f"bad edge line {line!r}")
            u, v = int(parts[0]), int(parts[1])
            w = Fraction(parts[2]) if len(parts) == 3 else Fraction(1)
            if kind == "simple" and w != 1:
                raise FormatError("weighted edge in a simple graph file")
            edges[(u, v)] = w
    return WeightedGraph(n, edges, labels, skeleton=skeleton)


def format_graph(g: WeightedGraph) -> str:
    kind = "simple" if g.simple else "weighted"
    out = [f"graph {g.n} {kind}"]
    for i, lab in enumerate(g.labels):
        if lab != str(i):
            out.append(f"label {i} {lab}")
    if g.skeleton is not None:
        out.append(f"skeleton {g.skeleton}")
    for (u, v), w in sorted(g.edges.items()):
        out.append(f"{u} {v}" if kind == "simple" else f"{u} {v} {w}")
    return "\n".join(out) + "\n"


def parse_table(text: str) -> GroupTable:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty table file")
    n = int(lines[0])
    rows = [[int(x) for x in line.split()] for line in lines[1:]]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise FormatError(f"expected {n} rows of {n} entries")
    ident = next((i for i, r in enumerate(rows) if r == list(range(n))), None)
    if ident is None:
        raise FormatError("no identity row")
    return GroupTable(rows, identity=ident)


def format_table(g: GroupTable) -> str:
    out = [str(g.order)] + [" ".join(map(str, row)) for row in g.rows]
    return "\n".join(out) + "\n"


def parse_perms(text: str) -> list[Permutation]:
    perms = []
    for line in _lines(text):
        vals = [int(x) for x in re.split(r"[\s,\[\]]+", line) if x]
        perms.append(Permutation(vals))
    if not perms:
        raise FormatError("no permutations")
    return perms


def read_metric(path) -> MetricSpace:
    return parse_metric(_read(path))


def read_graph(path) -> WeightedGraph:
    g = parse_graph(_read(path))
    g.name = g.name or Path(path).stem
    return g


def read_table(path) -> GroupTable:
    g = parse_table(_read(path))
    g.name = f"table:{path}"
    return g


def read_perms(path) -> list[Permutation]:
    return parse_perms(_read(path))
