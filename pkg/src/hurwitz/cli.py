"""Command-line interface.

Exit codes: 0 success or realizable, 1 negative decision, 2 usage or parse
error, 3 undecided (budget exhausted, or no closed-form rule applies).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Any

from hurwitz import checkerboard, classifier, dessins, diagrams, oracle
from hurwitz.branch_data import BranchDatum, SurfaceClass, check_compatibility, datum_from_json, parse_partition
from hurwitz.permutations import cycle_string
from hurwitz.sweep import FAMILIES, run_sweep

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_UNDECIDED = 0, 1, 2, 3


class UsageError(Exception):
    pass


_SURFACE = re.compile(r"^(\d*)([STP])$")


def _parse_surface(tok: str) -> SurfaceClass:
    m = _SURFACE.match(tok.strip())
    if not m:
        raise UsageError(f"cannot read surface {tok!r} (use S, T, 2T, P, 2P, ...)")
    count, kind = m.groups()
    if kind == "S":
        if count:
            raise UsageError("the sphere takes no genus prefix")
        return SurfaceClass(True, 0)
    g = int(count) if count else 1
    return SurfaceClass(kind == "T", g)


def parse_compact(text: str) -> BranchDatum:
    """Read ``(T,S,3,6,(4,2),(3,3),(3,3))``."""
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise UsageError("compact datum must be wrapped in parentheses")
    body = body[1:-1]
    head = re.match(r"\s*([^,()]+)\s*,\s*([^,()]+)\s*,\s*(\d+)\s*,\s*(\d+)\s*(.*)$", body)
    if not head:
        raise UsageError(f"cannot read datum {text!r}")
    cover, base, n, d, rest = head.groups()
    groups = re.findall(r"\(([^()]*)\)", rest)
    parts = []
    for i, g in enumerate(groups):
        try:
            values = [int(x) for x in g.split(",") if x.strip()]
        except ValueError as exc:
            raise UsageError(f"partition {i} is not a list of integers") from exc
        parts.append(parse_partition(values, int(d), i))
    if len(parts) != int(n):
        raise UsageError(f"datum declares n={n} but lists {len(parts)} partitions")
    return BranchDatum(_parse_surface(cover), _parse_surface(base), int(d), tuple(parts))


def _read_text(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    path = Path(arg)
    if not arg.lstrip().startswith(("{", "(", "[")) and path.exists():
        return path.read_text()
    return arg


def load_datum(arg: str) -> BranchDatum:
    text = _read_text(arg).strip()
    try:
        if text.startswith("("):
            return parse_compact(text)
        return datum_from_json(json.loads(text))
    except json.JSONDecodeError as exc:
        raise UsageError(f"datum is not valid JSON: {exc}") from exc
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_check(args) -> int:
    datum = load_datum(args.datum)
    report = check_compatibility(datum)
    lines = [f"{datum}: {'compatible' if report.compatible else 'not compatible'}"]
    for c in report.conditions:
        mark = "pass" if c.passed else "FAIL"
        lines.append(f"  condition {c.number} [{mark}] {c.statement}" + (f" ({c.detail})" if c.detail else ""))
    _emit(args, {"datum": str(datum), **report.to_json()}, "\n".join(lines))
    return EXIT_OK if report.compatible else EXIT_NO


def _oracle_payload(datum, decision: oracle.Decision) -> dict:
    return {"datum": str(datum), "method": "oracle", **decision.to_json()}


def cmd_decide(args) -> int:
    datum = load_datum(args.datum)
    report = check_compatibility(datum)
    if not report.compatible:
        _emit(
            args,
            {"datum": str(datum), "decision": "incompatible", "failed_conditions": report.failed},
            f"{datum}: not compatible (conditions {report.failed})",
        )
        return EXIT_NO
    if args.method in ("classifier", "auto"):
        c = classifier.classify(datum)
        if c.decision != classifier.OUTSIDE_SCOPE or args.method == "classifier":
            code = {classifier.REALIZABLE: EXIT_OK, classifier.EXCEPTIONAL: EXIT_NO}.get(c.decision, EXIT_UNDECIDED)
            _emit(args, {"datum": str(datum), "method": "classifier", **c.to_json()}, f"{datum}: {c}")
            return code
    try:
        decision = oracle.decide(datum, budget=args.budget, backend=args.backend, workers=args.workers)
    except oracle.BudgetExceeded as exc:
        _emit(
            args,
            {"datum": str(datum), "method": "oracle", "decision": "undecided", "nodes": exc.nodes, "frontier": exc.frontier},
            f"{datum}: undecided ({exc})",
        )
        return EXIT_UNDECIDED
    text = f"{datum}: {decision.status}"
    if decision.witness is not None:
        text += "\n  witness: " + json.dumps(decision.witness.to_json())
    _emit(args, _oracle_payload(datum, decision), text)
    if decision.status == "unsupported":
        return EXIT_USAGE
    return EXIT_OK if decision.realizable else EXIT_NO


def cmd_classify(args) -> int:
    datum = load_datum(args.datum)
    try:
        c = classifier.classify(datum)
    except classifier.IncompatibleDatum as exc:
        _emit(args, {"datum": str(datum), "decision": "incompatible", "error": str(exc)}, str(exc))
        return EXIT_NO
    _emit(args, {"datum": str(datum), **c.to_json()}, f"{datum}: {c}")
    return {classifier.REALIZABLE: EXIT_OK, classifier.EXCEPTIONAL: EXIT_NO}.get(c.decision, EXIT_UNDECIDED)


def cmd_sweep(args) -> int:
    report = run_sweep(
        args.dmax,
        family=args.family,
        genus_max=args.genus_max,
        genus_min=args.genus_min,
        dmin=args.dmin,
        budget=args.budget,
        workers=args.workers,
        timing=args.timing,
        parity=args.parity,
    )
    if args.output:
        Path(args.output).write_text(json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n")
    _emit(args, report.to_json(), report.table())
    return report.exit_code


def cmd_enumerate(args) -> int:
    if args.kind == "graphs":
        if args.genus is None or args.genus < 0:
            raise UsageError("--kind graphs needs --genus G >= 0")
        graphs = checkerboard.enumerate_minimal_graphs(args.genus, coarse=args.coarse)
        if args.count_only:
            _emit(args, {"kind": "graphs", "genus": args.genus, "coarse": args.coarse, "count": len(graphs)}, str(len(graphs)))
            return EXIT_OK
        payload = {"kind": "graphs", "genus": args.genus, "coarse": args.coarse, "graphs": [g.to_json() for g in graphs]}
        lines = [f"{'p':>3} {'q':>3}  f"] + [f"{g.p:>3} {g.q:>3}  {cycle_string(g.f)}" for g in graphs]
        _emit(args, payload, "\n".join(lines))
        return EXIT_OK
    if args.datum is None:
        raise UsageError("--kind dessins needs --datum")
    datum = load_datum(args.datum)
    try:
        found = list(dessins.enumerate_dessins(datum))
    except oracle.UnsupportedDatum as exc:
        raise UsageError(str(exc)) from exc
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.count_only:
        _emit(args, {"kind": "dessins", "datum": str(datum), "count": len(found)}, str(len(found)))
        return EXIT_OK
    if args.dot:
        print("\n".join(d.to_dot(f"dessin{i}") for i, d in enumerate(found)))
        return EXIT_OK
    payload = {"kind": "dessins", "datum": str(datum), "count": len(found), "dessins": [d.to_json() for d in found]}
    _emit(args, payload, "\n".join(json.dumps(d.to_json()) for d in found) or "no dessins")
    return EXIT_OK


def cmd_construct(args) -> int:
    datum = load_datum(args.datum)
    try:
        result = diagrams.construct_sphere_odd(datum)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    witness = diagrams.to_constellation(result.diagram)
    payload = {"datum": str(datum), **result.to_json(), "witness": witness.to_json()}
    lines = [f"{datum}: diagram with {len(result.diagram.chords)} chords"]
    for step in result.script:
        extra = f" arcs={step['arcs']}" if "arcs" in step else (f" {step['diagram']}" if "diagram" in step else "")
        lines.append(f"  {step['step']}{extra} -> {step['partitions']}")
    lines.append("  chords: " + json.dumps(result.diagram.to_json()["chords"]))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _load_witness(arg: str) -> oracle.Constellation:
    text = _read_text(arg)
    try:
        obj: Any = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"witness is not valid JSON: {exc}") from exc
    try:
        if isinstance(obj, dict) and "chords" in obj:
            return diagrams.to_constellation(diagrams.diagram_from_json(obj))
        if isinstance(obj, dict) and "edge_pairing" in obj:
            return dessins.to_constellation(dessins.dessin_from_json(obj))
        return oracle.constellation_from_json(obj)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_verify_witness(args) -> int:
    datum = load_datum(args.datum)
    witness = _load_witness(args.witness)
    ok = oracle.verify(witness, datum)
    _emit(args, {"datum": str(datum), "valid": ok}, f"{datum}: witness {'valid' if ok else 'INVALID'}")
    return EXIT_OK if ok else EXIT_NO


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hurwitz", description="Branched coverings of the sphere: compatibility, realizability, witnesses.")
    sub = parser.add_subparsers(dest="command", required=True)
    datum_help = "datum as JSON, compact '(T,S,3,6,(4,2),(3,3),(3,3))', a file path, or '-' for stdin"

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    p = add("check", cmd_check, "check the compatibility conditions")
    p.add_argument("datum", help=datum_help)

    p = add("decide", cmd_decide, "decide realizability")
    p.add_argument("datum", help=datum_help)
    p.add_argument("--method", choices=("oracle", "classifier", "auto"), default="auto")
    p.add_argument("--budget", type=int, default=None, help="oracle node budget (default: $HURWITZ_BUDGET or 1e9)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--backend", choices=("numba", "numpy"), default=None)

    p = add("classify", cmd_classify, "closed-form classification")
    p.add_argument("datum", help=datum_help)

    p = add("sweep", cmd_sweep, "compare classifier and oracle over a family")
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--dmin", type=int, default=2)
    p.add_argument("--family", choices=FAMILIES, default="d-2-2")
    p.add_argument("--genus-max", type=int, default=0)
    p.add_argument("--genus-min", type=int, default=0)
    p.add_argument("--parity", choices=("odd", "even"), default=None)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="record per-row wall time (makes output non-deterministic)")
    p.add_argument("--output", help="also write the JSON report here")

    p = add("enumerate", cmd_enumerate, "enumerate dessins or minimal graphs")
    p.add_argument("--kind", choices=("dessins", "graphs"), required=True)
    p.add_argument("--genus", type=int, default=None)
    p.add_argument("--coarse", action="store_true", help="graphs: also identify color-swapped graphs")
    p.add_argument("--datum", help=datum_help)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--dot", action="store_true", help="dessins: print DOT graphs")

    p = add("construct", cmd_construct, "build a diagram for an odd-degree (d-2,2) sphere datum")
    p.add_argument("datum", help=datum_help)

    p = add("verify-witness", cmd_verify_witness, "check a constellation, diagram or dessin against a datum")
    p.add_argument("datum", help=datum_help)
    p.add_argument("witness", help="witness JSON, a file path, or '-'")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        if getattr(args, "json", False):
            print(json.dumps({"error": str(exc)}))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
