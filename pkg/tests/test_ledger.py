import pytest

from natgroup import ledger
from natgroup.ledger import CHECKS, load_claims, run_claim, run_ledger, summary

CLAIMS = load_claims()


def test_claim_table_is_well_formed():
    ids = [c["id"] for c in CLAIMS]
    assert len(ids) == len(set(ids))
    for c in CLAIMS:
        assert c["kind"] in CHECKS, c["id"]
        assert c["tag"] in {"CLAIMED", "DERIVED", "DISPUTED"}
        assert set(c.get("modes") or []) <= {"strict", "weak"}
        assert c["statement"]


def _fake(kind_values, monkeypatch):
    def check(args, mode):
        return kind_values[mode.value]
    monkeypatch.setitem(CHECKS, "fake", check)
    return {"id": "x", "tag": "DERIVED", "statement": "s", "kind": "fake", "args": {},
            "modes": ["strict", "weak"], "expected": 1}


@pytest.mark.parametrize("values,outcome", [
    ({"strict": 1, "weak": 1}, "agree"),
    ({"strict": 2, "weak": 3}, "disagree"),
    ({"strict": 1, "weak": 2}, "mode-dependent"),
    ({"strict": None, "weak": 1}, "agree"),
    ({"strict": None, "weak": 2}, "disagree"),
    ({"strict": None, "weak": None}, "undecided"),
])
def test_outcome_aggregation(values, outcome, monkeypatch):
    assert run_claim(_fake(values, monkeypatch)).outcome == outcome


@pytest.fixture(scope="module")
def results():
    return {r.id: r for r in run_ledger(jobs=4)}


@pytest.mark.slow
def test_every_claim_is_evaluated_in_order(results):
    assert list(results) == [c["id"] for c in CLAIMS]
    counts = summary(list(results.values()))
    assert sum(counts.values()) == len(CLAIMS)


@pytest.mark.slow
@pytest.mark.parametrize("cid,outcome", [
    ("complete-K5-natural", "agree"),
    ("group-Z4-not-natural", "agree"),
    ("group-Z8-not-natural", "mode-dependent"),
    ("group-Q8-aut-720", "disagree"),
    ("lamplighter-Z4-not-natural", "agree"),
    ("octahedron-shrunk-triangle", "disagree"),
    ("trunctet-aut-12", "disagree"),
    ("group-Z6-product-metric", "mode-dependent"),
    ("lefschetz-structure-C5", "disagree"),
    ("grigorchuk-relations", "agree"),
    ("odometer-single-cycle", "agree"),
])
def test_selected_outcomes(results, cid, outcome):
    assert results[cid].outcome == outcome, results[cid].line()


def test_result_json_shape():
    r = run_claim(next(c for c in CLAIMS if c["id"] == "complete-K3-natural"))
    js = r.to_json()
    assert set(js) == {"id", "tag", "statement", "expected", "engine", "outcome", "note"}
    assert r.line().startswith("agree")


def test_load_claims_from_file(tmp_path):
    p = tmp_path / "c.json"
    p.write_text('[{"id": "a", "tag": "DERIVED", "statement": "s", "kind": "betti", '
                 '"args": {"graph": "C4"}, "expected": [1, 1]}]')
    claims = load_claims(p)
    assert run_claim(claims[0]).outcome == "agree"
    assert ledger.summary([run_claim(claims[0])]) == {"agree": 1}
