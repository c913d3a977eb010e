"""Command-line front end: ``natgroup <subcommand> ...``.

Exit status is 0 on success, 1 when ``--expect natural`` is given and the
verdict is not natural, 2 on any input or bound error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from . import graph as gr
from .config import BoundExceeded
from .fileio import FormatError, format_graph, graph_to_json
from .group import GroupSpecError, GroupTable
from .homology import homology_report, lefschetz_group_audit
from .ledger import load_claims, run_ledger, summary
from .metric import (
    CompatibilityMode,
    compatible_structures,
    generic_left_invariant_metric,
    is_natural_group,
    isometry_group,
)
from .specs import resolve_graph, resolve_group, resolve_metric
from .trees import (
    TreeFamily,
    ball_growth,
    family_generators,
    family_rules,
    sphere_action,
    tree_generator,
    verify_relations,
)


class UsageError(ValueError):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


# report rendering

def _verdict_text(v, decided=True) -> str:
    lines = [
        f"natural: {str(v.natural).lower() if decided else 'undecided'}",
        f"mode: {v.mode.value}",
        f"isometry order: {v.isometry_order}",
        "pretests: " + ", ".join(f"{k}={json.dumps(val)}" for k, val in sorted(v.pretests.items())),
        "classes: " + (", ".join(v.labels()) or "none"),
    ]
    return "\n".join(lines) + "\n"


def _render_verdict(v, fmt, extra=None):
    if fmt == "dot":
        raise UsageError("dot output is only available for graph-valued commands")
    if fmt == "text":
        return _verdict_text(v, (extra or {}).get("decided", True))
    out = v.to_json()
    if extra:
        out.update(extra)
    return _dump(out)


def _render_graph(g: gr.WeightedGraph, fmt):
    if fmt == "dot":
        return gr.to_dot(g)
    if fmt == "text":
        return format_graph(g)
    return _dump(graph_to_json(g))


def _render_report(report: dict, fmt):
    if fmt == "dot":
        raise UsageError("dot output is only available for graph-valued commands")
    if fmt == "text":
        return "".join(f"{k}: {json.dumps(v, sort_keys=True)}\n" for k, v in sorted(report.items()))
    return _dump(report)


def _elements(g: GroupTable, text: str | None) -> list[int]:
    if not text:
        return []
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok in g.labels:
            out.append(g.labels.index(tok))
        elif tok.isdigit() and int(tok) < g.order:
            out.append(int(tok))
        else:
            raise UsageError(f"unknown element {tok!r} of {g.name or 'group'}")
    return out


def _weights(g: GroupTable, text: str | None) -> dict[int, Fraction]:
    if not text:
        return {}
    out = {}
    for item in text.split(","):
        key, _, val = item.partition("=")
        if not val:
            raise UsageError(f"weight {item!r} must look like element=value")
        out[_elements(g, key)[0]] = Fraction(val.strip())
    return out


def _action(normal: GroupTable, base: GroupTable, items: list[str] | None) -> dict:
    if not items or items == ["trivial"]:
        return {k: list(range(normal.order)) for k in range(base.order)}
    action = {}
    for item in items:
        if item == "inversion":
            if not normal.is_abelian():
                raise UsageError("inversion is an automorphism only for abelian groups")
            if base.order != 2:
                raise UsageError("the inversion action needs a base group of order 2")
            flip = 1 - base.identity
            action[flip] = [normal.inv(x) for x in range(normal.order)]
            continue
        key, _, imgs = item.partition("->")
        if not imgs:
            raise UsageError(f"action {item!r} must look like k->[images]")
        action[_elements(base, key)[0]] = [int(x) for x in imgs.strip().strip("[]").split(",") if x.strip()]
    return action


# subcommands; each returns (output text, natural flag or None)

def cmd_isom(a):
    m = resolve_metric(a.metric)
    h = isometry_group(m)
    report = {
        "points": m.n,
        "order": h.order,
        "transitive": h.is_transitive(),
        "generators": [list(g) for g in h.generators],
    }
    return _render_report(report, a.format), None


def cmd_natural_graph(a):
    g = resolve_graph(a.graph)
    v = gr.is_natural_graph(g, a.mode)
    return _render_verdict(v, a.format, {"vertices": g.n}), v.natural


def cmd_natural_group(a):
    g = resolve_group(a.group)
    if a.metric == "left":
        v = compatible_structures(generic_left_invariant_metric(g), a.mode, pretests_only=a.pretests_only)
    else:
        v = is_natural_group(g, a.mode, pretests_only=a.pretests_only)
    extra = {"group_order": g.order, "metric": a.metric}
    if a.pretests_only:
        extra.update(decided=False, natural=None)
    return _render_verdict(v, a.format, extra), (None if a.pretests_only else v.natural)


def cmd_natural_metric(a):
    m = resolve_metric(a.metric)
    v = compatible_structures(m, a.mode)
    return _render_verdict(v, a.format, {"points": m.n}), v.natural


def cmd_cayley(a):
    g = resolve_group(a.group)
    gens = _elements(g, a.gens) if a.gens else list(range(g.order))
    out = gr.cayley_graph(g, gens, _weights(g, a.weights), name=f"Cay({a.group})")
    return _render_graph(out, a.format), None


def cmd_product(a):
    out = gr.product(resolve_graph(a.left), resolve_graph(a.right), gr.ProductKind(a.kind))
    return _render_graph(out, a.format), None


def cmd_zigzag(a):
    normal, base = resolve_group(a.normal), resolve_group(a.base)
    out = gr.zigzag_cayley(normal, _elements(normal, a.s), base, _elements(base, a.t),
                           _action(normal, base, a.action), gr.ZigzagPolicy(a.policy))
    return _render_graph(out, a.format), None


def _unary(fn):
    def run(a):
        return _render_graph(fn(resolve_graph(a.graph)), a.format), None
    return run


def cmd_homology(a):
    return _render_report(homology_report(resolve_graph(a.graph)), a.format), None


def cmd_lefschetz(a):
    g = resolve_graph(a.graph)
    if a.group == "aut":
        group = gr.graph_automorphisms(g)
    else:
        v = gr.is_natural_graph(g, a.mode)
        if not v.structures:
            raise UsageError(f"{a.graph} has no compatible group structure in {a.mode.value} mode")
        if not v.natural and a.group == "structure":
            raise UsageError(f"{a.graph} is not natural in {a.mode.value} mode; pick one with --group structure:<i>")
        idx = int(a.group.split(":", 1)[1]) if ":" in a.group else 0
        group = v.structures[idx].witness
    report = lefschetz_group_audit(g, group)
    return _render_report(report, a.format), None


def cmd_tree(a):
    family = TreeFamily(a.family)
    report = {"family": family.value, "depth": a.depth}
    if a.check_relations:
        rels = verify_relations(family, a.depth, a.arity)
        report["relations"] = [r.to_json() for r in rels]
        report["relations_ok"] = all(r.holds for r in rels if r.required)
    if a.sphere is not None:
        report["sphere"] = {}
        for sym in sorted(family_rules(family, a.arity)):
            act = sphere_action(tree_generator(family, sym, a.depth, a.arity), a.sphere)
            report["sphere"][sym] = {"cycle_type": list(act.cycle_type()), "perm": list(act)}
        report["level"] = a.sphere
    if a.growth is not None:
        report["growth"] = ball_growth(family_generators(family, a.depth, a.arity), a.growth).to_json()
    return _render_report(report, a.format), None


def cmd_ledger(a):
    claims = load_claims(a.claims)
    results = run_ledger(claims, jobs=a.jobs, only=a.only)
    if a.format == "dot":
        raise UsageError("dot output is only available for graph-valued commands")
    if a.format == "text":
        lines = [r.line() for r in results]
        lines.append("summary: " + ", ".join(f"{k}={v}" for k, v in sorted(summary(results).items())))
        return "\n".join(lines) + "\n", None
    return _dump({"claims": [r.to_json() for r in results], "summary": summary(results)}), None


def mode(text: str) -> CompatibilityMode:
    try:
        return CompatibilityMode.parse(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected strict or weak, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", type=mode, default=CompatibilityMode.STRICT, metavar="{strict,weak}",
                        help="strict (translations both sides and inversion) or weak (left translations only)")
    common.add_argument("--format", choices=["json", "dot", "text"], default="json")
    common.add_argument("--out", help="write output here instead of standard output")
    common.add_argument("--expect", choices=["natural"], help="exit with status 1 unless the verdict is natural")

    p = argparse.ArgumentParser(prog="natgroup", description="Natural metric spaces, groups and graphs.")
    p.add_argument("--version", action="version", version=f"natgroup {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=fn)
        return sp

    sp = add("isom", cmd_isom, "isometry group of a metric space")
    sp.add_argument("metric", help="metric file, generic:<group>, or a graph")
    sp = add("natural-graph", cmd_natural_graph, "naturalness of a graph's geodesic metric")
    sp.add_argument("graph")
    sp = add("natural-group", cmd_natural_group, "naturalness of a finite group")
    sp.add_argument("group")
    sp.add_argument("--metric", choices=["biinvariant", "left"], default="biinvariant",
                    help="generic metric used for the decision")
    sp.add_argument("--pretests-only", action="store_true")
    sp = add("natural-metric", cmd_natural_metric, "naturalness of a finite metric space")
    sp.add_argument("metric", help="metric file, generic:<group>, or a graph")
    sp = add("cayley", cmd_cayley, "Cayley graph of a group")
    sp.add_argument("group")
    sp.add_argument("--gens", help="comma-separated element labels or indices (default: all)")
    sp.add_argument("--weights", help="element=value pairs, e.g. 'r=1/2,s=2'")
    sp = add("product", cmd_product, "graph products")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.add_argument("--kind", choices=[k.value for k in gr.ProductKind], default="shannon")
    sp = add("zigzag", cmd_zigzag, "Cayley graph of a semidirect product on zig-zag words")
    sp.add_argument("normal")
    sp.add_argument("base")
    sp.add_argument("--s", required=True, help="generators of the normal subgroup")
    sp.add_argument("--t", default="", help="generators of the base group")
    sp.add_argument("--action", action="append",
                    help="k->[images] of the normal subgroup, 'inversion', or 'trivial'; repeatable")
    sp.add_argument("--policy", choices=[z.value for z in gr.ZigzagPolicy], default="ts")
    for name, fn, help in (("connection", gr.connection_graph, "connection graph"),
                           ("barycentric", gr.barycentric_refinement, "Barycentric refinement"),
                           ("complement", gr.complement, "graph complement")):
        sp = add(name, _unary(fn), help)
        sp.add_argument("graph")
    sp = add("homology", cmd_homology, "f-vector, Betti numbers, Euler characteristic, curvature")
    sp.add_argument("graph")
    sp = add("lefschetz", cmd_lefschetz, "Lefschetz numbers over a group of graph automorphisms")
    sp.add_argument("graph")
    sp.add_argument("--group", default="aut",
                    help="'aut' for the full automorphism group, 'structure' or 'structure:<i>' for a compatible structure")
    sp = add("tree", cmd_tree, "self-similar tree automorphism groups")
    sp.add_argument("--family", required=True, choices=[f.value for f in TreeFamily])
    sp.add_argument("--depth", type=int, required=True)
    sp.add_argument("--arity", type=int, default=2, help="odometer arity")
    sp.add_argument("--check-relations", action="store_true")
    sp.add_argument("--sphere", type=int, help="report actions on this level")
    sp.add_argument("--growth", type=int, help="ball radius for growth counts")
    sp = add("ledger", cmd_ledger, "re-check the table of published claims")
    sp.add_argument("--claims", help="alternative claims JSON file")
    sp.add_argument("--only", help="run claims whose id contains this text")
    sp.add_argument("--jobs", type=int, default=1)
    return p


_ERRORS = (UsageError, GroupSpecError, FormatError, BoundExceeded, ValueError, OSError, KeyError)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text, natural = args.func(args)
    except _ERRORS as exc:
        print(f"natgroup {args.command}: error: {exc}", file=stderr)
        return 2
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"natgroup {args.command}: error: {exc}", file=stderr)
            return 2
    else:
        stdout.write(text)
    if args.expect == "natural" and natural is not True:
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
