"""Resolve textual graph, group and metric arguments.

A graph argument is a file path, a named graph, or an operation applied to
graph arguments: ``complement(X)``, ``connection(X)``, ``barycentric(X)``,
``join(X,Y)``, ``union(X,Y)``, ``shannon(X,Y)``, ``tensor(X,Y)``,
``cartesian(X,Y)``, ``lex(X,Y)``, ``cayley(GROUP;g1,g2,...)``.
"""
from __future__ import annotations

from pathlib import Path

from . import graph as gr
from .fileio import read_graph, read_metric
from .group import GroupTable, named_group
from .metric import MetricSpace, generic_biinvariant_metric

_UNARY = {
    "complement": gr.complement,
    "connection": gr.connection_graph,
    "barycentric": gr.barycentric_refinement,
}
_BINARY = {
    "join": gr.join,
    "union": gr.disjoint_union,
    "shannon": lambda a, b: gr.product(a, b, gr.ProductKind.SHANNON),
    "tensor": lambda a, b: gr.product(a, b, gr.ProductKind.TENSOR),
    "cartesian": lambda a, b: gr.product(a, b, gr.ProductKind.CARTESIAN),
    "lex": lambda a, b: gr.product(a, b, gr.ProductKind.LEXICOGRAPHIC),
}


def _split_args(body: str, sep: str = ",") -> list[str]:
    out, depth, cur = [], 0, []
    for ch in body:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur).strip())
    return out


def resolve_graph(text: str) -> gr.WeightedGraph:
    text = text.strip()
    if Path(text).is_file():
        return read_graph(text)
    if "(" in text and text.endswith(")"):
        op, body = text.split("(", 1)
        op, body = op.strip(), body[:-1]
        if op in _UNARY:
            g = _UNARY[op](resolve_graph(body))
            g.name = text
            return g
        if op in _BINARY:
            args = _split_args(body)
            if len(args) != 2:
                raise ValueError(f"{op} takes two graphs")
            g = _BINARY[op](resolve_graph(args[0]), resolve_graph(args[1]))
            g.name = text
            return g
        if op == "cayley":
            group_text, _, gens = body.partition(";")
            grp = resolve_group(group_text)
            elems = [_element(grp, x) for x in gens.split(",") if x.strip()]
            return gr.cayley_graph(grp, elems, name=text)
    return gr.named_graph(text)


def _element(g: GroupTable, token: str) -> int:
    token = token.strip()
    if token in g.labels:
        return g.labels.index(token)
    return int(token)


def resolve_group(text: str) -> GroupTable:
    return named_group(text.strip())


def resolve_metric(text: str) -> MetricSpace:
    """A metric file, ``generic:<group>`` for a generic bi-invariant metric, or a graph's geodesic metric."""
    text = text.strip()
    if Path(text).is_file() and Path(text).read_text().lstrip().startswith("metric"):
        return read_metric(text)
    if text.startswith("generic:"):
        return generic_biinvariant_metric(resolve_group(text[len("generic:"):]))
    return gr.geodesic_metric(resolve_graph(text))
