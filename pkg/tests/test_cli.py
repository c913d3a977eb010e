import io
import json

import pytest

from natgroup.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv)
    assert code == 0, err
    return json.loads(out)


def test_cyclic_four_is_not_natural_under_strict():
    v = call_json("natural-group", "Z4", "--mode", "strict")
    assert v["natural"] is False
    assert [c["label"] for c in v["classes"]] == ["Z4", "Z2 x Z2"]


def test_trunctet_weak_verdict():
    v = call_json("natural-graph", "trunctet", "--mode", "weak")
    assert v["natural"] is True and [c["label"] for c in v["classes"]] == ["A4"]
    assert v["isometry_order"] == 24


def test_homology_of_octahedron():
    assert call_json("homology", "octahedron")["betti"] == [1, 0, 1]


def test_exit_codes():
    assert call("natural-group", "Z4", "--expect", "natural")[0] == 1
    assert call("natural-group", "Z3", "--expect", "natural")[0] == 0
    code, _, err = call("natural-group", "Q9")
    assert code == 2 and "error" in err
    assert call("natural-group", "Z4", "--mode", "loose")[0] == 2
    assert call("natural-graph", "no-such-graph")[0] == 2


def test_pretests_only_is_undecided():
    v = call_json("natural-group", "LL(4)", "--pretests-only")
    assert v["natural"] is None and v["decided"] is False


@pytest.mark.parametrize("argv", [
    ("natural-group", "D4", "--mode", "weak"),
    ("natural-graph", "octahedron"),
    ("lefschetz", "C5"),
    ("isom", "generic:Q8"),
])
def test_output_is_byte_identical_across_runs(argv):
    assert call(*argv) == call(*argv)


@pytest.mark.parametrize("fmt,suffix", [("text", ".graph"), ("json", ".json")])
def test_emitted_graph_reads_back_with_same_verdict(tmp_path, fmt, suffix):
    path = tmp_path / f"g{suffix}"
    code, _, err = call("complement", "C6", "--format", fmt, "--out", str(path))
    assert code == 0, err
    direct = call_json("natural-graph", "complement(C6)", "--mode", "weak")
    again = call_json("natural-graph", str(path), "--mode", "weak")
    assert direct["natural"] == again["natural"]
    assert [c["label"] for c in direct["classes"]] == [c["label"] for c in again["classes"]]


def test_dot_output():
    code, out, _ = call("cayley", "Z5", "--gens", "1", "--format", "dot")
    assert code == 0 and out.startswith("graph ") and out.count(" -- ") == 5


def test_product_and_zigzag():
    g = call_json("product", "K2", "K3", "--kind", "tensor")
    assert g["n"] == 6 and len(g["edges"]) == 6
    z = call_json("zigzag", "Z3", "Z2", "--s", "1", "--t", "1", "--action", "1->[0,2,1]")
    assert z["n"] == 6


def test_tree_command():
    t = call_json("tree", "--family", "grigorchuk", "--depth", "5", "--check-relations", "--growth", "3")
    assert t["relations_ok"] and t["growth"]["sizes"] == [1, 5, 11, 23]


def test_lefschetz_over_structure_group():
    v = call_json("lefschetz", "K3", "--group", "structure")
    assert v["total"] == 3


def test_ledger_subset():
    code, out, err = call("ledger", "--only", "complete-K3")
    assert code == 0, err
    assert json.loads(out)["summary"] == {"agree": 1}
