"""Data-driven table of published claims, each re-checked by the engine.

Tags: CLAIMED marks a published statement under audit, DERIVED a value
obtained independently here, DISPUTED a published statement expected to
fail.  Outcomes per claim: agree, disagree, mode-dependent (the verdict
flips between STRICT and WEAK) or undecided (the engine stops at a bound or
at pretests).
"""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from . import graph as gr
from .config import BoundExceeded
from .group import are_isomorphic, automorphism_group, direct_product, named_group
from .homology import betti, clique_complex, euler_characteristic, f_function, gauss_bonnet_curvature, lefschetz_group_audit
from .metric import (
    CompatibilityMode,
    certifies,
    compatible_structures,
    generic_biinvariant_metric,
    generic_left_invariant_metric,
    is_natural_group,
    product_metric,
)
from .specs import resolve_graph
from .trees import orbit_group_order, sphere_action, tree_generator, tree_word, verify_relations

TAGS = ("CLAIMED", "DERIVED", "DISPUTED")


def load_claims(path=None) -> list[dict]:
    if path is None:
        text = resources.files("natgroup").joinpath("data/claims.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    claims = json.loads(text)
    for c in claims:
        if c["tag"] not in TAGS:
            raise ValueError(f"claim {c['id']}: unknown tag {c['tag']!r}")
        if c["kind"] not in CHECKS:
            raise ValueError(f"claim {c['id']}: unknown kind {c['kind']!r}")
    return claims


def _shrunk_octahedron():
    o = gr.octahedron()
    tri = {0, 2, 4}
    edges = {e: (Fraction(1, 2) if set(e) <= tri else 1) for e in o.edges}
    return gr.WeightedGraph(6, edges, name="octahedron-shrunk-triangle")


def _zigzag_z3_z2():
    z3, z2 = named_group("Z3"), named_group("Z2")
    return gr.zigzag_cayley(z3, [1], z2, [1], {1: [0, 2, 1]}, gr.ZigzagPolicy.TS)


_SPECIAL = {
    "octahedron-shrunk-triangle": _shrunk_octahedron,
    "zigzag-Z3-Z2": _zigzag_z3_z2,
}


def _graph(name):
    return _SPECIAL[name]() if name in _SPECIAL else resolve_graph(name)


def _labels(verdict):
    return verdict.labels()


# each check returns the engine's value, or None when it cannot decide

def _graph_classes(args, mode):
    return _labels(gr.is_natural_graph(_graph(args["graph"]), mode))


def _graph_natural(args, mode):
    return gr.is_natural_graph(_graph(args["graph"]), mode).natural


def _graph_has_classes(args, mode):
    return set(args["classes"]) <= set(_graph_classes(args, mode))


def _graph_aut_order(args, mode):
    return gr.graph_automorphisms(_graph(args["graph"])).order


def _group_classes(args, mode):
    return _labels(is_natural_group(named_group(args["group"]), mode))


def _group_natural(args, mode):
    return is_natural_group(named_group(args["group"]), mode).natural


def _group_has_classes(args, mode):
    return set(args["classes"]) <= set(_group_classes(args, mode))


def _group_natural_left(args, mode):
    m = generic_left_invariant_metric(named_group(args["group"]))
    return compatible_structures(m, mode).natural


def _group_aut_order(args, mode):
    return automorphism_group(named_group(args["group"])).order


def _group_certificate(args, mode):
    g = named_group(args["group"])
    other = named_group(args["competitor"])
    m = generic_biinvariant_metric(g)
    if certifies(m, g, mode) and certifies(m, other, mode) and are_isomorphic(g, other) is None:
        return False
    return None


def _group_pretests(args, mode):
    v = is_natural_group(named_group(args["group"]), mode, pretests_only=True)
    if not all(v.pretests.values()):
        return False
    return None


def _product_metric_classes(args, mode):
    m1 = generic_biinvariant_metric(named_group(args["left"]))
    m2 = generic_biinvariant_metric(named_group(args["right"]))
    return _labels(compatible_structures(product_metric(m1, m2, args.get("form", "sum")), mode))


def _graphs_isomorphic(args, mode):
    return gr.are_isomorphic_graphs(_graph(args["a"]), _graph(args["b"]))


def _shannon_cayley(args, mode):
    a, b = named_group(args["a"]), named_group(args["b"])
    sa, sb = _all_generators(a), _all_generators(b)
    cay = gr.cayley_graph(direct_product(a, b), gr.product_generators(a, sa, b, sb))
    shannon = gr.product(gr.cayley_graph(a, sa), gr.cayley_graph(b, sb), gr.ProductKind.SHANNON)
    return cay.edge_set() == shannon.edge_set()


def _all_generators(g):
    # a small generating set: greedily add elements until they generate
    gens = []
    for x in range(g.order):
        if len(g.generated_subgroup(gens)) == g.order:
            break
        if x not in g.generated_subgroup(gens):
            gens.append(x)
    return gens


def _curvature(args, mode):
    c = clique_complex(_graph(args["graph"]))
    return {"euler": euler_characteristic(c), "curvature": sorted({str(k) for k in gauss_bonnet_curvature(c)})}


def _betti(args, mode):
    return betti(clique_complex(_graph(args["graph"])))


def _f_function(args, mode):
    return f_function(clique_complex(_graph(args["graph"])))


def _lefschetz_structure_total(args, mode):
    g = _graph(args["graph"])
    v = gr.is_natural_graph(g, mode)
    if not v.natural:
        return None
    return lefschetz_group_audit(g, v.structures[0].witness)["total"]


def _lefschetz_aut_total(args, mode):
    g = _graph(args["graph"])
    return lefschetz_group_audit(g, gr.graph_automorphisms(g))["total"]


def _tree_relations(args, mode):
    lo, hi = args["depths"]
    return all(r.holds for d in range(lo, hi + 1)
               for r in verify_relations(args["family"], d) if r.required)


def _odometer_single_cycle(args, mode):
    t = tree_generator("odometer", "T", args["depth"])
    for k in range(1, args["depth"] + 1):
        if sphere_action(t, k).cycle_type() != (2 ** k,):
            return False
    return True


def _tree_level_group_order(args, mode):
    gens = [sphere_action(tree_word(args["family"], w, args["depth"]), args["level"]) for w in args["words"]]
    return orbit_group_order(gens)


CHECKS = {
    "graph_classes": _graph_classes,
    "graph_natural": _graph_natural,
    "graph_has_classes": _graph_has_classes,
    "graph_aut_order": _graph_aut_order,
    "group_classes": _group_classes,
    "group_natural": _group_natural,
    "group_has_classes": _group_has_classes,
    "group_natural_left": _group_natural_left,
    "group_aut_order": _group_aut_order,
    "group_certificate": _group_certificate,
    "group_pretests": _group_pretests,
    "product_metric_classes": _product_metric_classes,
    "graphs_isomorphic": _graphs_isomorphic,
    "shannon_cayley": _shannon_cayley,
    "curvature": _curvature,
    "betti": _betti,
    "f_function": _f_function,
    "lefschetz_structure_total": _lefschetz_structure_total,
    "lefschetz_aut_total": _lefschetz_aut_total,
    "tree_relations": _tree_relations,
    "odometer_single_cycle": _odometer_single_cycle,
    "tree_level_group_order": _tree_level_group_order,
}


@dataclass
class ClaimResult:
    id: str
    tag: str
    statement: str
    expected: object
    values: dict = field(default_factory=dict)   # mode (or "-") -> engine value
    outcome: str = "undecided"
    note: str | None = None

    def to_json(self):
        return {
            "id": self.id,
            "tag": self.tag,
            "statement": self.statement,
            "expected": self.expected,
            "engine": self.values,
            "outcome": self.outcome,
            "note": self.note,
        }

    def line(self) -> str:
        engine = ", ".join(f"{k}={_short(v)}" for k, v in self.values.items())
        return f"{self.outcome:<14} {self.tag:<8} {self.id}: expected {_short(self.expected)}; engine {engine}"


def _short(v):
    return json.dumps(v, sort_keys=True)


def _expected_for(claim, args):
    if claim["expected"] == "vertices":
        return _graph(args["graph"]).n
    return claim["expected"]


def _normalize(v):
    return json.loads(json.dumps(v, sort_keys=True))


def run_claim(claim: dict) -> ClaimResult:
    check = CHECKS[claim["kind"]]
    args = claim["args"]
    expected = _expected_for(claim, args)
    res = ClaimResult(claim["id"], claim["tag"], claim["statement"], expected, note=claim.get("note"))
    modes = claim.get("modes") or ["-"]
    outcomes = set()
    for mode in modes:
        try:
            value = check(args, CompatibilityMode.STRICT if mode == "-" else CompatibilityMode.parse(mode))
        except BoundExceeded as exc:
            value = None
            res.note = f"{res.note + '; ' if res.note else ''}{mode}: {exc}"
        if value is None:
            res.values[mode] = None
            outcomes.add("undecided")
            continue
        value = _normalize(value)
        res.values[mode] = value
        outcomes.add("agree" if value == _normalize(expected) else "disagree")
    # a mode that cannot decide does not mask the modes that can
    if outcomes != {"undecided"}:
        outcomes.discard("undecided")
    if outcomes == {"agree"}:
        res.outcome = "agree"
    elif outcomes == {"disagree"}:
        res.outcome = "disagree"
    elif {"agree", "disagree"} <= outcomes:
        res.outcome = "mode-dependent"
    else:
        res.outcome = "undecided"
    return res


def run_ledger(claims: list[dict] | None = None, jobs: int = 1, only: str | None = None) -> list[ClaimResult]:
    """Evaluate every claim; output order always follows the table."""
    claims = load_claims() if claims is None else claims
    if only:
        claims = [c for c in claims if only in c["id"]]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(run_claim, claims))
    return [run_claim(c) for c in claims]


def summary(results: list[ClaimResult]) -> dict:
    out = {}
    for r in results:
        out[r.outcome] = out.get(r.outcome, 0) + 1
    return out
