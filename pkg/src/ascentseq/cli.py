"""Command-line front-end: counting, enumeration, tables, coefficients,
and the verification suites.

Exit status is 0 on success, 1 when a verification suite fails, and 2 on
usage errors.  Output goes to stdout or, with --out, is written to a file
in one atomic replace.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from . import gentree_0021 as g0021
from . import gentree_pair as gpair
from .core import (
    count_avoiders,
    enumerate_avoiders,
    format_sequence,
    parse_patterns,
)
from .series import GF_NAMES, MSeries, USeries, a007317, build_closed_form
from .verify import combine_reports, crosscheck_0021, crosscheck_pair, wilf_equivalence_check

PAIR_KEY = frozenset(gpair.PAIR_PATTERNS)
QUAD_KEY = frozenset((g0021.QUAD_PATTERN,))
KEY_1012 = frozenset(((1, 0, 1, 2),))

#: methods valid for each of the specially supported pattern sets
_TREE_SETS = {PAIR_KEY, QUAD_KEY}
_FORMULA_SETS = {PAIR_KEY, QUAD_KEY, KEY_1012}


def _write_out(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    directory = os.path.dirname(os.path.abspath(out_path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ascentseq-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
        os.replace(tmp, out_path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _count_by_method(patterns, n: int, method: str, parser) -> int:
    key = frozenset(patterns)
    if method == "brute":
        return count_avoiders(n, patterns)[n - 1]
    if method in ("tree", "recurrence"):
        if key not in _TREE_SETS:
            parser.error(
                f"method {method!r} needs a generating tree; available for "
                "pattern sets 201,210 and 0021 only"
            )
        if key == PAIR_KEY:
            levels = (
                gpair.simulate_pair_levels(n)
                if method == "tree"
                else gpair.pair_recurrence_levels(n)
            )
        else:
            levels = (
                g0021.simulate_0021_levels(n)
                if method == "tree"
                else g0021.triple_recurrence_levels(n)
            )
        return levels[-1].total()
    if method in ("gf", "formula"):
        if key not in _FORMULA_SETS:
            parser.error(
                f"method {method!r} is only available for the pattern sets "
                "201,210 and 0021 and 1012, whose counts have a closed form"
            )
        if method == "formula":
            return a007317(n)
        name = "C_total_pair" if key == PAIR_KEY else "total_0021"
        return int(build_closed_form(name, n).coeff(n))
    parser.error(f"unknown method {method!r}")


def _cmd_count(args, parser) -> int:
    patterns = args.patterns
    n = args.n
    count = _count_by_method(patterns, n, args.method, parser)
    if args.format == "json":
        text = json.dumps(
            {
                "patterns": args.patterns_text,
                "n": n,
                "method": args.method,
                "count": count,
            }
        )
    elif args.format == "csv":
        text = "patterns,n,method,count\n" + f"\"{args.patterns_text}\",{n},{args.method},{count}"
    else:
        text = str(count)
    _write_out(text, args.out)
    return 0


def _cmd_enumerate(args, parser) -> int:
    seqs = [format_sequence(s) for s in enumerate_avoiders(args.n, args.patterns)]
    if args.format == "json":
        text = json.dumps(
            {"patterns": args.patterns_text, "n": args.n, "sequences": seqs}
        )
    elif args.format == "csv":
        text = "\n".join(["sequence"] + seqs)
    else:
        text = "\n".join(seqs)
    _write_out(text, args.out)
    return 0


def _cmd_table(args, parser) -> int:
    n = args.n
    if args.family == "pair":
        dense = gpair.dense_array(n)
        rows = [f"{a},{b},{c},{d}" for a, b, c, d in gpair.csv_rows(n)]
        csv_text = "\n".join(["n,p,q,g"] + rows)
    else:
        tables = g0021.triple_recurrence_tables(n)
        dense = g0021.dense_a0(tables) if args.family == "a0" else g0021.dense_a1(tables)
        cls = "g0" if args.family == "a0" else "g1"
        rows = [
            f"{a},{b},{c},{d},{e}"
            for a, b, c, d, e in g0021.csv_rows(n)
            if b == cls
        ]
        csv_text = "\n".join(["n,class,q,r,count"] + rows)
    if args.format == "json":
        text = json.dumps({"family": args.family, "n": n, "array": dense})
    elif args.format == "csv":
        text = csv_text
    else:
        text = "\n".join(" ".join(str(v) for v in row) for row in dense) or "(empty)"
    _write_out(text, args.out)
    return 0


def _cmd_coeffs(args, parser) -> int:
    series = build_closed_form(args.gf, args.order)
    if args.format == "json":
        text = json.dumps(series.to_json_dict())
    elif isinstance(series, USeries):
        lines = [
            f"{k},{c.numerator}/{c.denominator}"
            for k, c in enumerate(series.coeffs)
            if c
        ]
        header = f"{series.var},coeff"
        if args.format == "csv":
            text = "\n".join([header] + lines)
        else:
            text = "\n".join(
                f"{k} {c}" for k, c in enumerate(series.coeffs) if c
            ) or "0"
    else:
        assert isinstance(series, MSeries)
        items = sorted(series.terms.items())
        if args.format == "csv":
            header = ",".join(series.vars) + ",coeff"
            lines = [
                ",".join(str(x) for x in e) + f",{c.numerator}/{c.denominator}"
                for e, c in items
            ]
            text = "\n".join([header] + lines)
        else:
            text = "\n".join(
                " ".join(str(x) for x in e) + f" {c}" for e, c in items
            ) or "0"
    _write_out(text, args.out)
    return 0


def _cmd_verify(args, parser) -> int:
    if args.order is not None and args.n_max is not None and args.order < args.n_max:
        parser.error("--order must be at least --n-max")
    reports = []
    if args.suite in ("pair", "all"):
        reports.append(
            crosscheck_pair(
                n_max=args.n_max if args.n_max is not None else 12,
                gf_order=args.order if args.order is not None else 40,
            )
        )
    if args.suite in ("0021", "all"):
        reports.append(
            crosscheck_0021(
                n_max=args.n_max if args.n_max is not None else 12,
                gf_order=args.order if args.order is not None else 40,
            )
        )
    if args.suite in ("wilf", "all"):
        reports.append(
            wilf_equivalence_check(args.n_max if args.n_max is not None else 11)
        )
    report = reports[0] if len(reports) == 1 else combine_reports(reports)
    text = report.to_json() if args.format == "json" else report.to_text()
    _write_out(text, args.out)
    return 0 if report.passed else 1


def _add_common(sub, *, patterns=False, n=False, fmt=True):
    if patterns:
        sub.add_argument(
            "--patterns",
            required=True,
            metavar="SET",
            help="comma-separated reduced digit strings, e.g. 201,210",
        )
    if n:
        sub.add_argument("--n", type=int, required=True, help="sequence length")
    if fmt:
        sub.add_argument(
            "--format", choices=("plain", "json", "csv"), default="plain"
        )
    sub.add_argument("--out", metavar="PATH", help="write output to PATH atomically")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ascentseq",
        description="Enumerate pattern-avoiding ascent sequences and verify "
        "that the supported classes are counted by the binomial convolution "
        "of the Catalan numbers.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("count", help="count avoiders of one length")
    _add_common(p, patterns=True, n=True)
    p.add_argument(
        "--method",
        choices=("brute", "tree", "recurrence", "gf", "formula"),
        default="brute",
        help="counting pipeline (tree/recurrence/gf/formula only for the "
        "supported pattern sets)",
    )
    p.set_defaults(func=_cmd_count)

    p = subs.add_parser("enumerate", help="list avoiders of one length")
    _add_common(p, patterns=True, n=True)
    p.set_defaults(func=_cmd_enumerate)

    p = subs.add_parser("table", help="print one level array")
    p.add_argument("--family", choices=("pair", "a0", "a1"), required=True)
    _add_common(p, n=True)
    p.set_defaults(func=_cmd_table)

    p = subs.add_parser("coeffs", help="expand a closed-form generating function")
    p.add_argument("--gf", choices=GF_NAMES, required=True)
    p.add_argument("--order", type=int, required=True, help="truncation order")
    _add_common(p)
    p.set_defaults(func=_cmd_coeffs)

    p = subs.add_parser("verify", help="run a cross-validation suite")
    p.add_argument("--suite", choices=("pair", "0021", "wilf", "all"), required=True)
    p.add_argument("--n-max", type=int, help="brute-force depth (default 12, wilf 11)")
    p.add_argument("--order", type=int, help="generating-function order (default 40)")
    _add_common(p)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "patterns", None) is not None:
        args.patterns_text = args.patterns
        try:
            args.patterns = parse_patterns(args.patterns)
        except ValueError as exc:
            parser.error(str(exc))
    if getattr(args, "n", None) is not None and args.n < 1:
        parser.error("--n must be at least 1")
    if getattr(args, "order", None) is not None and args.order < 0:
        parser.error("--order must be non-negative")
    return args.func(args, parser)


if __name__ == "__main__":
    sys.exit(main())
