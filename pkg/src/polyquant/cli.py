"""Command-line front end.

Subcommands: ``solve`` (one instance, JSON or CSV), ``table`` (errors over a
range of n), ``figure`` (SVG drawing) and ``dimension`` (dimension and
coefficient estimates).  Exit status is 0 on success, 1 on solver failure or a
failed verification and 2 on bad arguments.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass

from .errors import InvalidArgument, SolverFailure
from .geometry import Constraint
from .measure import CONVENTIONS, convert
from .oracle import OracleConfig, OracleVerdict, verify
from .regimes import solve
from .svg import render
from .unconstrained import dimension_and_coefficient

SCHEMA = 1
CONSTRAINTS = [c.value for c in Constraint]


@dataclass
class ResultRecord:
    k: int
    n: int
    constraint: str
    points: list
    conditional_flags: list
    V_n: float
    direct_value: float
    convention: str = "arclength"
    closed_form_expression: str | None = None
    oracle_verdict: dict | None = None


def dumps(obj) -> str:
    """JSON text with every float written to 17 significant digits."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return json.dumps(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return json.dumps(None)
        return format(obj, ".17g")
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    if hasattr(obj, "item"):  # numpy scalar
        return dumps(obj.item())
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def build_record(k, n, constraint, method="closed_form", convention="arclength", check=False,
                 config: OracleConfig | None = None) -> ResultRecord:
    q, value, report = solve(k, n, constraint, method)
    verdict = None
    if check:
        v: OracleVerdict = verify(report, config)
        verdict = asdict(v)
        for key in ("solver_value", "oracle_value", "value_delta", "direct_value"):
            verdict[key] = convert(verdict[key], k, "arclength", convention)
    return ResultRecord(k, n, Constraint(constraint).value, q.points.tolist(), q.conditional.tolist(),
                        convert(value, k, "arclength", convention), convert(report.direct_value, k, "arclength", convention),
                        convention, report.expression, verdict)


def _n_range(text: str) -> range:
    try:
        lo, hi = (int(v) for v in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}") from None
    if hi < lo:
        raise argparse.ArgumentTypeError("empty range")
    return range(lo, hi + 1)


def _add_instance(p, n_required=True):
    p.add_argument("--k", type=int, default=6, help="number of polygon sides (default 6)")
    if n_required:
        p.add_argument("--n", type=int, required=True, help="total number of points, vertices included")
    p.add_argument("--constraint", choices=CONSTRAINTS, default="none")
    p.add_argument("--method", choices=("closed_form", "exact"), default="closed_form",
                   help="long diagonal only: explicit formulas or exact group minimisation")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyquant", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="optimal set and error for one instance")
    _add_instance(p)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--convention", choices=CONVENTIONS, default="arclength")
    p.add_argument("--verify", action="store_true", help="attach an oracle verdict")
    p.add_argument("--out", help="write to this file instead of stdout")

    p = sub.add_parser("table", help="errors for a range of n as CSV")
    _add_instance(p, n_required=False)
    p.add_argument("--n-range", type=_n_range, required=True, help="inclusive range such as 6..12")
    p.add_argument("--convention", choices=CONVENTIONS, default="arclength")
    p.add_argument("--out")

    p = sub.add_parser("figure", help="SVG drawing of an optimal set")
    _add_instance(p)
    p.add_argument("--out", required=True, help="SVG file to write")

    p = sub.add_parser("dimension", help="quantization dimension and coefficient estimates")
    p.add_argument("--k", type=int, default=6)
    p.add_argument("--n-max", type=int, default=600)
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([format(v, ".17g") if isinstance(v, float) else v for v in r])
    return buf.getvalue()


def cmd_solve(args) -> int:
    rec = build_record(args.k, args.n, args.constraint, args.method, args.convention, args.verify)
    if args.format == "json":
        text = dumps(dict(schema=SCHEMA, **asdict(rec))) + "\n"
    else:
        rows = [(i, x, y, int(f)) for i, ((x, y), f) in enumerate(zip(rec.points, rec.conditional_flags))]
        text = f"# k={rec.k} n={rec.n} constraint={rec.constraint} V_n={rec.V_n:.17g}\n"
        text += _csv(rows, ("index", "x", "y", "conditional"))
    _emit(text, args.out)
    if rec.oracle_verdict is not None and not rec.oracle_verdict["passed"]:
        print(f"oracle verification failed: {rec.oracle_verdict}", file=sys.stderr)
        return 1
    return 0


def cmd_table(args) -> int:
    rows = []
    for n in args.n_range:
        _, value, _ = solve(args.k, n, args.constraint, args.method)
        rows.append((n, convert(value, args.k, "arclength", args.convention)))
    _emit(_csv(rows, ("n", "V_n")), args.out)
    bad = [rows[i + 1][0] for i in range(len(rows) - 1) if not rows[i + 1][1] < rows[i][1]]
    if bad:
        print(f"V_n is not strictly decreasing at n = {bad}", file=sys.stderr)
        return 1
    return 0


def cmd_figure(args) -> int:
    q, value, _ = solve(args.k, args.n, args.constraint, args.method)
    text = render(args.k, q, args.constraint, title=f"k={args.k} n={args.n} {args.constraint} V_n={value:.10g}")
    try:
        _emit(text, args.out)
    except OSError as exc:
        print(f"cannot write {args.out}: {exc}", file=sys.stderr)
        return 1
    return 0


def cmd_dimension(args) -> int:
    rep = dimension_and_coefficient(args.k, args.n_max)
    d = asdict(rep)
    d.pop("samples")
    sys.stdout.write(dumps(dict(schema=SCHEMA, k=args.k, n_max=args.n_max, **d)) + "\n")
    return 0


COMMANDS = dict(solve=cmd_solve, table=cmd_table, figure=cmd_figure, dimension=cmd_dimension)


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if getattr(args, "constraint", "none") in ("diag-short", "diag-long") and args.k != 6:
        parser.error("diagonal constraints require --k 6")
    try:
        return COMMANDS[args.command](args)
    except SolverFailure as exc:
        print(f"solver failure: {exc}\n{dumps(exc.diagnostics)}", file=sys.stderr)
        return 1
    except InvalidArgument as exc:
        parser.error(str(exc))


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
