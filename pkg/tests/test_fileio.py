import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from natgroup.fileio import (
    FormatError,
    format_graph,
    format_metric,
    format_table,
    graph_from_json,
    graph_to_json,
    parse_graph,
    parse_metric,
    parse_perms,
    parse_table,
    read_graph,
    read_metric,
)
from natgroup.graph import WeightedGraph, named_graph
from natgroup.group import named_group, random_relabel
from natgroup.metric import generic_biinvariant_metric


@st.composite
def weighted_graphs(draw):
    n = draw(st.integers(1, 7))
    edges = {}
    for u in range(n):
        for v in range(u + 1, n):
            if draw(st.booleans()):
                edges[(u, v)] = Fraction(draw(st.integers(1, 9)), draw(st.integers(1, 4)))
    return WeightedGraph(n, edges)


@given(weighted_graphs())
def test_graph_text_round_trip(g):
    assert parse_graph(format_graph(g)) == g


@given(weighted_graphs())
def test_graph_json_round_trip(g):
    text = json.dumps(graph_to_json(g))
    h = parse_graph(text)
    assert h == g and graph_from_json(json.loads(text)) == g


def test_graph_labels_and_skeleton_survive():
    g = named_graph("trunctet")
    h = parse_graph(format_graph(g))
    assert list(h.labels) == list(g.labels)
    text = "graph 3\nskeleton 1\n0 1\n1 2\n0 2\n"
    assert parse_graph(text).skeleton == 1


@pytest.mark.parametrize("spec", ["Z4", "D4", "Q8"])
def test_metric_round_trip(spec):
    m = generic_biinvariant_metric(named_group(spec))
    m2 = parse_metric(format_metric(m))
    assert m2.dist == m.dist and list(m2.labels) == list(m.labels)


@given(st.sampled_from(["Z6", "S3", "Q8", "A4"]), st.integers(0, 999))
def test_table_round_trip(spec, seed):
    g = random_relabel(named_group(spec), random.Random(seed))
    h = parse_table(format_table(g))
    assert h.rows == g.rows and h.identity == g.identity


def test_perms_accept_brackets_and_commas():
    ps = parse_perms("[1, 0, 2]\n2 0 1  # comment\n")
    assert [tuple(p) for p in ps] == [(1, 0, 2), (2, 0, 1)]


@pytest.mark.parametrize("parser,text", [
    (parse_metric, ""),
    (parse_metric, "metrik 2\na\nb\n0 1\n1 0"),
    (parse_metric, "metric 2\na\nb\n0 1\n1"),
    (parse_graph, ""),
    (parse_graph, "graph 2 fancy\n0 1"),
    (parse_graph, "graph 2 simple\n0 1 2"),
    (parse_graph, "graph 2\n0 1 1 1"),
    (parse_graph, "{not json"),
    (parse_graph, '{"n": 2}'),
    (parse_table, "2\n1 0\n0 0"),
    (parse_table, "3\n0 1 2"),
    (parse_perms, "# nothing\n"),
])
def test_format_errors(parser, text):
    with pytest.raises(FormatError):
        parser(text)


def test_read_from_disk(tmp_path):
    p = tmp_path / "hexagon.graph"
    p.write_text(format_graph(named_graph("C6")))
    g = read_graph(p)
    assert g.name == "hexagon" and g.edge_count == 6
    q = tmp_path / "z4.metric"
    q.write_text(format_metric(generic_biinvariant_metric(named_group("Z4"))))
    assert read_metric(q).n == 4
