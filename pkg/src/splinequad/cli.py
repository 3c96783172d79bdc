"""Command-line front end: rule generation, verification, reference tables,
and the seeded property suites.

JSON is the canonical output format (numbers carry 17 significant digits
so documents round-trip losslessly); CSV flattens a rule to one line per
node for quick plotting.  Exit codes: 0 success, 1 error, and for ``gen``
2 when the rule was produced but carries warnings.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import props, verify
from .rulegen import Partition, QuadratureRule, RuleSegment, SubintervalPlan, generate
from .semiclassical import DiracVector

SCHEMA_VERSION = 1


# ----------------------------------------------------------------------
# deterministic JSON with fixed float precision

def _format_float(x: float) -> str:
    if not np.isfinite(x):
        raise ValueError(f"cannot serialize non-finite number {x!r}")
    s = format(float(x), ".17g")
    if not any(ch in s for ch in ".e"):
        s += ".0"
    return s


def dumps(obj, indent: int = 0) -> str:
    pad = " " * indent
    inner = " " * (indent + 2)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{inner}{json.dumps(str(k))}: {dumps(v, indent + 2)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        flat = all(isinstance(v, (int, float, bool, str, type(None))) for v in obj)
        if flat:
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        items = [f"{inner}{dumps(v, indent + 2)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        return json.dumps(bool(obj) if obj is not None else None)
    if isinstance(obj, float):
        return _format_float(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, np.floating):
        return _format_float(float(obj))
    if isinstance(obj, np.ndarray):
        return dumps(obj.tolist(), indent)
    return json.dumps(obj)


# ----------------------------------------------------------------------
# rule <-> document

def rule_to_document(rule: QuadratureRule, max_defect: float | None = None) -> dict:
    subs = []
    for seg in rule.segments:
        p = seg.plan
        subs.append({
            "index": p.index,
            "span": [p.span[0], p.span[1]],
            "kind": p.kind,
            "dirac_left": None if p.dirac_left is None else list(p.dirac_left.entries),
            "dirac_right": None if p.dirac_right is None else list(p.dirac_right.entries),
            "nodes": [float(x) for x in seg.nodes],
            "weights": [float(w) for w in seg.weights],
        })
    return {
        "schema_version": SCHEMA_VERSION,
        "continuity": rule.continuity,
        "degree": rule.degree,
        "knots": list(rule.partition.knots),
        "middle_index": rule.middle_index,
        "omega_policy": rule.omega_policy,
        "omega": float(rule.omega),
        "subintervals": subs,
        "checks": {
            "weight_sum": rule.weight_sum,
            "max_defect": max_defect,
            "warnings": list(rule.warnings),
        },
    }


def document_to_rule(doc: dict) -> QuadratureRule:
    c = int(doc["continuity"])
    partition = Partition(tuple(float(x) for x in doc["knots"]))
    segments = []
    for sub in doc["subintervals"]:
        plan = SubintervalPlan(
            index=int(sub["index"]),
            span=(float(sub["span"][0]), float(sub["span"][1])),
            kind=str(sub["kind"]),
            node_count=len(sub["nodes"]),
            dirac_left=None if sub["dirac_left"] is None else DiracVector(c, tuple(sub["dirac_left"])),
            dirac_right=None if sub["dirac_right"] is None else DiracVector(c, tuple(sub["dirac_right"])),
            omega=float(doc["omega"]) if sub["kind"] == "M" else None,
        )
        segments.append(RuleSegment(
            plan=plan,
            nodes=np.asarray(sub["nodes"], dtype=float),
            weights=np.asarray(sub["weights"], dtype=float),
        ))
    return QuadratureRule(
        continuity=c,
        degree=int(doc["degree"]),
        partition=partition,
        middle_index=int(doc["middle_index"]),
        omega_policy=str(doc["omega_policy"]),
        segments=tuple(segments),
        warnings=tuple(doc.get("checks", {}).get("warnings", ())),
    )


def rule_to_csv(rule: QuadratureRule) -> str:
    lines = ["subinterval,kind,node,weight"]
    for seg in rule.segments:
        for x, w in zip(seg.nodes, seg.weights):
            lines.append(f"{seg.plan.index},{seg.plan.kind},{_format_float(x)},{_format_float(w)}")
    return "\n".join(lines) + "\n"


def _write(text: str, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ----------------------------------------------------------------------
# subcommands

def cmd_gen(args) -> int:
    try:
        knots = tuple(float(v) for v in args.knots.split(","))
        rule = generate(Partition(knots), args.continuity, args.degree,
                        middle_index=args.middle, omega_policy=args.omega_policy)
        space = verify.SplineSpace(rule.partition, args.degree, args.continuity)
        report = verify.verify_exactness(rule, space)
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    doc = rule_to_document(rule, max_defect=report.max_defect)
    if args.format == "csv":
        _write(rule_to_csv(rule), args.out)
    else:
        _write(dumps(doc) + "\n", args.out)
    return 2 if rule.warnings else 0


def cmd_verify(args) -> int:
    try:
        with open(args.rule) as fh:
            doc = json.load(fh)
        rule = document_to_rule(doc)
    except Exception as exc:
        print(f"error: malformed rule document: {exc}", file=sys.stderr)
        return 1
    if args.degree is not None and args.degree != rule.degree:
        print("error: space mismatch (degree flag disagrees with the document)", file=sys.stderr)
        return 1
    if args.continuity is not None and args.continuity != rule.continuity:
        print("error: space mismatch (continuity flag disagrees with the document)",
              file=sys.stderr)
        return 1
    space = verify.SplineSpace(rule.partition, rule.degree, rule.continuity)
    report = verify.verify_exactness(rule, space, rtol=args.tol)
    _write(dumps(report.to_dict()) + "\n", args.out)
    return 0 if report.passed else 1


def cmd_table(args) -> int:
    try:
        report = verify.reproduce_table(args.id)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _write(dumps(report.to_dict()) + "\n", args.out)
    return 0 if report.passed else 1


def cmd_props(args) -> int:
    result = props.run_all(seed=args.seed)
    _write(dumps(result) + "\n", args.out)
    return 0 if result["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="splinequad",
        description="Gaussian quadrature rules exact on C0/C1 spline spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a rule for a spline space")
    gen.add_argument("--continuity", type=int, choices=(0, 1), required=True)
    gen.add_argument("--degree", type=int, required=True)
    gen.add_argument("--knots", type=str, required=True,
                     help="comma-separated knot positions, e.g. 0,1,2,3,4")
    gen.add_argument("--middle", type=int, default=None,
                     help="1-based index of the subinterval with the extra node")
    gen.add_argument("--omega-policy", type=str, default=None,
                     help="node-left | zero | value=<x>")
    gen.add_argument("--format", choices=("json", "csv"), default="json")
    gen.add_argument("--out", type=str, default=None)
    gen.set_defaults(func=cmd_gen)

    ver = sub.add_parser("verify", help="check a stored rule document for exactness")
    ver.add_argument("rule", type=str, help="path to a rule document (JSON)")
    ver.add_argument("--tol", type=float, default=verify.DEFECT_RTOL)
    ver.add_argument("--degree", type=int, default=None)
    ver.add_argument("--continuity", type=int, default=None)
    ver.add_argument("--out", type=str, default=None)
    ver.set_defaults(func=cmd_verify)

    tab = sub.add_parser("table", help="reproduce a reference rule and compare")
    tab.add_argument("id", type=int, help="reference table number (1-5)")
    tab.add_argument("--out", type=str, default=None)
    tab.set_defaults(func=cmd_table)

    pr = sub.add_parser("props", help="run the seeded invariant suites")
    pr.add_argument("--seed", type=int, default=0)
    pr.add_argument("--out", type=str, default=None)
    pr.set_defaults(func=cmd_props)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
