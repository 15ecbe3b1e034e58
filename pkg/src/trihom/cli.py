"""Command-line front end: enumerate, dim, plan.

Exit codes: 0 ok, 2 bad input, 3 infeasible vertex typing, 4 resource
limit exceeded, 5 oracle mismatch.  Output is byte-deterministic for
fixed arguments.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import homology, io as gio, oracle, surgery
from .errors import (
    DimensionTooSmall,
    Infeasible,
    MalformedPairing,
    NotConnected,
    NotTrivalent,
    ResourceLimit,
)
from .multigraph import TadpolePolicy, enumerate_trivalent
from .orientation import ClassStatus, Convention

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_INFEASIBLE = 3
EXIT_RESOURCE = 4
EXIT_ORACLE_MISMATCH = 5


def _policy(name: str) -> TadpolePolicy:
    return TadpolePolicy(name)


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_enumerate(args) -> int:
    if args.k < 1:
        print(f"error: --k must be >= 1, got {args.k}", file=sys.stderr)
        return EXIT_BAD_INPUT
    policy = _policy(args.tadpoles)
    chunks = []
    try:
        for i, g in enumerate(
            enumerate_trivalent(args.k, policy, max_classes=args.max_classes)
        ):
            if args.format == "jsonl":
                chunks.append(gio.to_jsonl_record(g) + "\n")
            elif args.format == "graph-text":
                if i:
                    chunks.append("\n")
                chunks.append(gio.to_graph_text(g))
            else:
                chunks.append(gio.to_dot(g, name=f"G{i}"))
    except ResourceLimit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    _write(args.output, "".join(chunks))
    return EXIT_OK


def cmd_dim(args) -> int:
    if args.k < 1:
        print(f"error: --k must be >= 1, got {args.k}", file=sys.stderr)
        return EXIT_BAD_INPUT
    if args.oracle_check and args.k > 2:
        print("error: --oracle-check supports k <= 2 only", file=sys.stderr)
        return EXIT_BAD_INPUT
    convention = Convention(args.convention)
    policy = _policy(args.tadpoles)
    try:
        report = homology.dimension(args.k, convention, policy)
    except ResourceLimit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    doc = report.to_json()
    if args.certify:
        certs = []
        for cls in report.basis.classes:
            cert = homology.certify(cls.class_id, report)
            certs.append(cert.to_json())
        doc["certificates"] = certs
    if args.oracle_check:
        orc = oracle.brute_dimension(args.k, convention, policy)
        agrees = orc["dim"] == report.dimension
        doc["oracle_check"] = {"dim": orc["dim"], "agrees": agrees}
        if not agrees:
            _emit_report(args, doc)
            print(
                f"error: oracle dimension {orc['dim']} != pipeline "
                f"{report.dimension}",
                file=sys.stderr,
            )
            return EXIT_ORACLE_MISMATCH
    if args.dump_matrix:
        with open(args.dump_matrix, "w") as fh:
            fh.write(report.relations.matrix.to_matrixmarket())
    _emit_report(args, doc)
    return EXIT_OK


def _emit_report(args, doc: dict) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    _write(args.json, text)


def cmd_plan(args) -> int:
    try:
        with open(args.graph) as fh:
            g = gio.from_graph_text(fh.read())
    except OSError as exc:
        print(f"error: cannot read graph file: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (MalformedPairing, NotTrivalent, NotConnected) as exc:
        print(f"error: bad graph file: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    try:
        p = surgery.plan(g, args.ambient_dim)
    except DimensionTooSmall as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except Infeasible as exc:
        print(f"error: {exc} [{exc.token}]", file=sys.stderr)
        return EXIT_INFEASIBLE
    if args.format == "json":
        doc = p.to_json()
        doc["report"] = surgery.y_link_report(p)
        _write(args.output, json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        _write(args.output, surgery.render_plan_text(p))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="trihom",
        description="Trivalent graph homology dimensions and surgery plans",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p_enum = sub.add_parser("enumerate", help="list isomorphism classes")
    p_enum.add_argument("--k", type=int, required=True)
    p_enum.add_argument(
        "--tadpoles", choices=["exclude", "include"], default="exclude"
    )
    p_enum.add_argument(
        "--format", choices=["jsonl", "graph-text", "dot"], default="jsonl"
    )
    p_enum.add_argument("--output", default=None)
    p_enum.set_defaults(func=cmd_enumerate)

    p_dim = sub.add_parser("dim", help="dimension of the graph-homology space")
    p_dim.add_argument("--k", type=int, required=True)
    p_dim.add_argument("--convention", choices=["even", "odd"], required=True)
    p_dim.add_argument(
        "--tadpoles", choices=["exclude", "include"], default="exclude"
    )
    p_dim.add_argument("--oracle-check", action="store_true")
    p_dim.add_argument("--certify", action="store_true")
    p_dim.add_argument("--json", default=None, help="output path (default stdout)")
    p_dim.add_argument("--dump-matrix", default=None, metavar="PATH")
    p_dim.set_defaults(func=cmd_dim)

    p_plan = sub.add_parser("plan", help="surgery plan for a graph file")
    p_plan.add_argument("--graph", required=True)
    p_plan.add_argument("--ambient-dim", type=int, required=True)
    p_plan.add_argument("--format", choices=["json", "text"], default="text")
    p_plan.add_argument("--output", default=None)
    p_plan.set_defaults(func=cmd_plan)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
