"""A fixed collection of small metric spaces used for engine-wide property checks."""
from __future__ import annotations

from fractions import Fraction

from . import graph as gr
from .group import named_group
from .metric import (
    MetricSpace,
    discrete_metric,
    generic_biinvariant_metric,
    generic_left_invariant_metric,
    product_metric,
)
from .specs import resolve_graph


def _path(n):
    return gr.WeightedGraph(n, [(i, i + 1) for i in range(n - 1)], name=f"path{n}")


def _shrunk_octahedron():
    o = gr.octahedron()
    return gr.WeightedGraph(6, {e: (Fraction(1, 2) if set(e) <= {0, 2, 4} else 1) for e in o.edges})


def _weighted_hexagon():
    # alternating edge weights: only rotations by two and three reflections survive
    return gr.WeightedGraph(6, {(i, (i + 1) % 6): (1 if i % 2 == 0 else 2) for i in range(6)})


def metric_corpus(max_points: int | None = None) -> dict[str, MetricSpace]:
    """Named metric spaces, smallest first.  Geodesic metrics carry a ``graph:`` prefix."""
    out: dict[str, MetricSpace] = {}
    graphs = ["K2", "K3", "K4", "K5", "K6", "C4", "C5", "C6", "C7", "C8", "K3,3", "octahedron",
              "prism(3)", "prism(4)", "cube(3)", "connection(C3)", "connection(C4)", "lex(K2,P2)",
              "shannon(K3,K2)", "join(C4,C4)", "trunctet"]
    for name in graphs:
        out[f"graph:{name}"] = gr.geodesic_metric(resolve_graph(name))
    out["graph:path3"] = gr.geodesic_metric(_path(3))
    out["graph:path4"] = gr.geodesic_metric(_path(4))
    out["graph:octahedron-shrunk-triangle"] = gr.geodesic_metric(_shrunk_octahedron())
    out["graph:weighted-hexagon"] = gr.geodesic_metric(_weighted_hexagon())
    for g in ["Z2 x Z2", "Z4", "Z5", "Z6", "S3", "Z8", "D4", "Q8", "Z2 x Z4", "Z9", "D5"]:
        out[f"generic:{g}"] = generic_biinvariant_metric(named_group(g))
    for g in ["S3", "D4", "Q8", "Z6"]:
        out[f"left:{g}"] = generic_left_invariant_metric(named_group(g))
    out["product:Z2,Z3"] = product_metric(generic_biinvariant_metric(named_group("Z2")),
                                          generic_biinvariant_metric(named_group("Z3")))
    out["product-max:K2,K3"] = product_metric(discrete_metric(2), discrete_metric(3), "max", 2)
    if max_points is not None:
        out = {k: m for k, m in out.items() if m.n <= max_points}
    return dict(sorted(out.items(), key=lambda kv: (kv[1].n, kv[0])))
