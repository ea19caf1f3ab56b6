"""torus-nielsen: reports, grid sweeps, model dumps and classification from the command line."""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from .bundle import BundleMapData, Unclassified, ValidationError, classify, in_listed_family, mf_result, pi1_relations, route
from .cells import SQUARE, TRIANGULATED, build_square_model, build_triangulated_model
from .intlinalg import IntMatrix2
from .report import ExitCode, build_report, dumps, render_text

DEFAULT_B4 = (-2, -1, 0, 2, 3)


def parse_matrix(text: str) -> IntMatrix2:
    """Row-major ``a11,a12,a21,a22``."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"expected 4 comma-separated integers, got {text!r}")
    try:
        return IntMatrix2(*(int(p) for p in parts))
    except ValueError:
        raise argparse.ArgumentTypeError(f"matrix entries must be integers: {text!r}") from None


def parse_range(text: str) -> list[int]:
    """``-3:3`` (inclusive), ``1,2,5``, a single integer, or ``""`` for an empty range."""
    text = text.strip()
    if not text:
        return []
    try:
        if ":" in text:
            lo, hi = text.split(":")
            return list(range(int(lo), int(hi) + 1))
        return [int(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer range {text!r}") from None


# -- report -------------------------------------------------------------------------------


def cmd_report(args) -> int:
    d = BundleMapData(args.A, args.B, args.c1, args.c2)
    rep = build_report(d, y_shift=args.y_shift)
    sys.stdout.write(rep.dumps() if args.format == "json" else render_text(rep))
    return int(rep.exit_code)


# -- sweep --------------------------------------------------------------------------------


def _sweep_points(args) -> list[tuple[int, int, int, int]]:
    c1s, c2s = args.c1, args.c2
    if args.family == SQUARE:
        b3s, b4s = [0], args.b4 if args.b4 is not None else list(DEFAULT_B4)
    elif args.family == TRIANGULATED:
        b3s, b4s = [1], [-1]
    else:
        b3s = args.b3 if args.b3 is not None else [0]
        b4s = args.b4 if args.b4 is not None else list(DEFAULT_B4)
    return sorted(itertools.product(c1s, c2s, b3s, b4s))


def _sweep_one(point: tuple[int, int, int, int], A: IntMatrix2, y_shift: int) -> dict:
    c1, c2, b3, b4 = point
    d = BundleMapData(A, IntMatrix2(1, b3, 0, b4), c1, c2)
    rep = build_report(d, y_shift=y_shift)
    row = {"c1": c1, "c2": c2, "b3": b3, "b4": b4, "formula": abs(c1 * (b4 - 1) - c2 * b3), "status": rep.status}
    if rep.agreement:
        row.update(rep.agreement["values"])
    return row


def run_sweep(args) -> tuple[list[dict], dict]:
    points = _sweep_points(args)
    A = args.A if args.A is not None else IntMatrix2(1, 0, 0, 1)
    if args.jobs > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            rows = list(ex.map(_sweep_one, points, itertools.repeat(A), itertools.repeat(args.y_shift)))
    else:
        rows = [_sweep_one(p, A, args.y_shift) for p in points]
    rows.sort(key=lambda r: (r["c1"], r["c2"], r["b3"], r["b4"]))
    mismatches = [r for r in rows if r["status"] == "disagree" or r.get("mf") not in (None, r["formula"])]
    summary = {
        "points": len(rows),
        "agree": sum(r["status"] == "agree" for r in rows),
        "skipped": sum(r["status"] in ("invalid", "unsupported") for r in rows),
        "mismatches": [[r["c1"], r["c2"], r["b3"], r["b4"]] for r in mismatches],
    }
    return rows, summary


def cmd_sweep(args) -> int:
    rows, summary = run_sweep(args)
    if args.format == "json":
        sys.stdout.write(dumps({"rows": rows, "summary": summary}))
    elif args.format == "jsonl":
        for r in rows:
            sys.stdout.write(json.dumps(r, sort_keys=True) + "\n")
    else:
        head = f"{'c1':>4} {'c2':>4} {'b3':>4} {'b4':>4} {'formula':>8} {'MF':>4} {'N(F)':>5} {'circ':>5}  status"
        print(head)
        for r in rows:
            cells = [r.get(k) for k in ("mf", "nielsen", "circles")]
            mf, n, c = ("-" if x is None else x for x in cells)
            print(f"{r['c1']:>4} {r['c2']:>4} {r['b3']:>4} {r['b4']:>4} {r['formula']:>8} {mf:>4} {n:>5} {c:>5}  {r['status']}")
        print(f"{summary['points']} points, {summary['agree']} agree, {summary['skipped']} skipped, "
              f"{len(summary['mismatches'])} mismatches")
    return int(ExitCode.DISAGREE if summary["mismatches"] else ExitCode.AGREE)


# -- dump-model ---------------------------------------------------------------------------


def cmd_dump_model(args) -> int:
    if args.model == SQUARE:
        m = build_square_model(args.c1, args.c2, args.b4, y_shift=args.y_shift)
    else:
        m = build_triangulated_model(args.c1, args.c2)
    data = m.to_json()
    if args.format == "json":
        sys.stdout.write(dumps(data))
        return 0
    p = data["params"]
    print(f"{m.name} model  c1={p['c1']} c2={p['c2']} b4={p['b4']}  phi={data['phi']}  cells={data['cells']}")
    for key in ("partial1", "partial2", "D0", "D1"):
        print(f"{key}:")
        for row in data[key]:
            print("  [ " + "  ".join(f"{x:>10}" for x in row) + " ]")
    return 0


# -- classify -----------------------------------------------------------------------------


def cmd_classify(args) -> int:
    d = BundleMapData(args.A, args.B, args.c1, args.c2)
    try:
        label = classify(d)
    except ValidationError as exc:
        out, code = {"error": str(exc), "status": "invalid"}, ExitCode.INVALID
    except Unclassified as exc:
        out, code = {"error": str(exc), "status": "unsupported"}, ExitCode.UNSUPPORTED
    else:
        r = route(d, label)
        out = {
            "label": label.letter.value,
            "P": str(label.P),
            "A1": str(label.A1),
            "B1": str(label.B1),
            "listed_family": in_listed_family(label),
            "mf": mf_result(d, label).to_json(),
            "relations": pi1_relations(d.A).as_strings(),
            "route": None if r is None else {"model": r.model, "P": str(r.P), "params": list(r.model_params())},
            "status": "ok",
        }
        code = ExitCode.UNSUPPORTED if label.letter.value in ("IV", "V") else ExitCode.AGREE
    if args.format == "json":
        sys.stdout.write(dumps(out))
    else:
        for k, v in out.items():
            print(f"{k}: {v}")
    return int(code)


# -- parser -------------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with the validation code so that 2 keeps meaning "pipelines disagree"."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(int(ExitCode.INVALID), f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="torus-nielsen", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def data_flags(p, need_b=True):
        p.add_argument("--A", type=parse_matrix, required=True, help="gluing matrix a11,a12,a21,a22")
        p.add_argument("--B", type=parse_matrix, required=need_b, help="fiber matrix a11,a12,a21,a22")
        p.add_argument("--c1", type=int, default=0)
        p.add_argument("--c2", type=int, default=0)

    p = sub.add_parser("report", help="classify, trace and enumerate fixed circles for one map")
    data_flags(p)
    p.add_argument("--y-shift", type=int, default=2, help="Y helper shift for negative arguments (square model)")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("sweep", help="run the pipelines over a parameter grid")
    p.add_argument("--family", choices=(SQUARE, TRIANGULATED, "general"), default=SQUARE)
    p.add_argument("--c1", type=parse_range, default=parse_range("-3:3"))
    p.add_argument("--c2", type=parse_range, default=parse_range("0"))
    p.add_argument("--b3", type=parse_range, default=None)
    p.add_argument("--b4", type=parse_range, default=None)
    p.add_argument("--A", type=parse_matrix, default=None, help="gluing matrix for the general family")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--y-shift", type=int, default=2)
    p.add_argument("--format", choices=("json", "jsonl", "text"), default="text")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("dump-model", help="print a cell model")
    p.add_argument("--model", choices=(SQUARE, TRIANGULATED), default=SQUARE)
    p.add_argument("--c1", type=int, default=1)
    p.add_argument("--c2", type=int, default=0)
    p.add_argument("--b4", type=int, default=2)
    p.add_argument("--y-shift", type=int, default=2)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_dump_model)

    p = sub.add_parser("classify", help="case label, normal form and MF")
    data_flags(p)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_classify)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
