"""Command-line surface.

Subcommands:

* ``expand``  - run the expansion pipeline for a catalog knot and emit the
  D-table, line table, integrality report and approximants.
* ``torus``   - generate certified lines of a (p, q) torus knot.
* ``verify``  - run a verification suite against the embedded golden data;
  exits nonzero on any failure.
* ``catalog`` - validate and list a knot catalog.

The default catalog is embedded; ``--catalog`` or the MMJONES_CATALOG
environment variable select an external JSON file.  Reports are JSON by
default (rationals as exact strings), with a TSV export for line tables.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional

from . import __version__, reports
from .knots import (
    CatalogError,
    KnotError,
    TorusParams,
    catalog_lookup,
    conway_torus,
    default_catalog,
    load_catalog,
)
from .mmexpand import approx_poly, bottom_line_check, build_dtable, integrality_report, to_htilde_lines, to_z_lines
from .toruslines import torus_lines
from .verify import SUITES, run_suite

CATALOG_ENV = "MMJONES_CATALOG"
DEFAULT_ORDER_CEILING = 6


def _load_records(path: Optional[str]):
    path = path or os.environ.get(CATALOG_ENV)
    if path:
        return load_catalog(path)
    return default_catalog()


def _emit(text: str, out_path: Optional[str]) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _approx_exponents(n: int, parameter: str, mode: str) -> List[int]:
    if mode == "2n+1":
        return [2 * n + 1]
    if mode == "3n+1":
        return [3 * (n // 2) + 1] if n % 2 == 0 else []
    # auto: follow the parameter
    if parameter == "ht":
        return [3 * (n // 2) + 1] if n % 2 == 0 else []
    return [2 * n + 1]


def cmd_expand(args) -> int:
    records = _load_records(args.catalog)
    rec = catalog_lookup(records, args.knot)
    if args.order > args.max_order:
        raise SystemExit(
            f"error: order {args.order} exceeds the ceiling {args.max_order} "
            "(raise it with --max-order)"
        )
    d = build_dtable(rec, args.order, jobs=args.jobs)
    lines = to_z_lines(d) if args.parameter == "h" else to_htilde_lines(d)
    if args.format == "tsv":
        _emit(reports.linetable_tsv(lines), args.out)
        return 0
    approx = []
    top = 2 * d.N if args.lines is None else min(args.lines, 2 * d.N)
    for n in range(top + 1):
        for exponent in _approx_exponents(n, args.parameter, args.exponent_mode):
            approx.append(reports.approx_doc(approx_poly(lines, rec.conway, n, exponent)))
    doc = {
        "schema": "mmjones.expand/1",
        "knot": rec.name,
        "order": d.N,
        "parameter": args.parameter,
        "amphicheiral": rec.amphicheiral,
        "conway": reports.qpoly_doc(rec.conway),
        "dtable": reports.dtable_doc(d),
        "lines": reports.linetable_doc(lines),
        "bottom_line": reports.bottom_line_doc(bottom_line_check(d, rec.conway)),
        "integrality": reports.integrality_doc(
            integrality_report(lines, rec.amphicheiral)
        ),
        "approx": approx,
    }
    _emit(reports.dump_json(doc), args.out)
    return 0


def cmd_torus(args) -> int:
    t = TorusParams(args.p, args.q)
    if args.lines > args.max_lines:
        raise SystemExit(
            f"error: {args.lines} lines exceed the ceiling {args.max_lines} "
            "(raise it with --max-lines)"
        )
    lines = torus_lines(t, args.lines)
    doc = {
        "schema": "mmjones.torus/1",
        "p": t.p,
        "q": t.q,
        "conway": reports.qpoly_doc(conway_torus(t)),
        "lines": [
            {
                "n": lf.n,
                "numerator": reports.qpoly_doc(lf.numerator),
                "denominator_power": 2 * lf.n + 1,
                "series": [
                    reports.frac_str(c)
                    for c in lf.series_coeffs(2 * args.z_terms)
                ][::2],
            }
            for lf in lines
        ],
    }
    _emit(reports.dump_json(doc), args.out)
    return 0


def cmd_verify(args) -> int:
    records = _load_records(args.catalog)
    results = run_suite(args.suite, scope=args.scope, records=records, jobs=args.jobs)
    failed = [r for r in results if not r.passed]
    if args.format == "json":
        doc = {
            "schema": "mmjones.verify/1",
            "suite": args.suite,
            "scope": args.scope,
            "passed": not failed,
            "checks": [
                {"name": r.name, "passed": r.passed, "detail": r.detail}
                for r in results
            ],
        }
        _emit(reports.dump_json(doc), args.out)
    else:
        lines = []
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            suffix = f"  ({r.detail})" if r.detail else ""
            lines.append(f"{status} {r.name}{suffix}")
        lines.append(
            f"{len(results) - len(failed)}/{len(results)} checks passed"
        )
        _emit("\n".join(lines) + "\n", args.out)
    return 1 if failed else 0


def cmd_catalog(args) -> int:
    try:
        records = _load_records(args.path)
    except (CatalogError, KnotError, OSError) as exc:
        sys.stderr.write(f"catalog invalid: {exc}\n")
        return 1
    doc = {
        "schema": "mmjones.catalog/1",
        "entries": [
            {
                "name": r.name,
                "strands": r.braid.strands,
                "braid": list(r.braid.letters),
                "writhe": r.braid.writhe(),
                "amphicheiral": r.amphicheiral,
                "conway": reports.qpoly_doc(r.conway),
            }
            for r in records
        ],
    }
    _emit(reports.dump_json(doc), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mmjones",
        description="Exact colored Jones expansions and torus-knot lines",
    )
    parser.add_argument("--version", action="version", version=f"mmjones {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_expand = sub.add_parser("expand", help="expansion pipeline for a catalog knot")
    p_expand.add_argument("--knot", required=True)
    p_expand.add_argument("--order", type=int, required=True, metavar="N")
    p_expand.add_argument("--parameter", choices=("h", "ht"), default="h")
    p_expand.add_argument("--format", choices=("json", "tsv"), default="json")
    p_expand.add_argument("--out", default=None, metavar="PATH")
    p_expand.add_argument("--catalog", default=None, metavar="FILE")
    p_expand.add_argument("--lines", type=int, default=None, metavar="L",
                          help="emit approximants only for lines n <= L")
    p_expand.add_argument("--exponent-mode", choices=("auto", "2n+1", "3n+1"),
                          default="auto")
    p_expand.add_argument("--max-order", type=int, default=DEFAULT_ORDER_CEILING,
                          help="runtime ceiling on N (default %(default)s)")
    p_expand.add_argument("--jobs", type=int, default=1)
    p_expand.set_defaults(func=cmd_expand)

    p_torus = sub.add_parser("torus", help="certified lines of a torus knot")
    p_torus.add_argument("--p", type=int, required=True)
    p_torus.add_argument("--q", type=int, required=True)
    p_torus.add_argument("--lines", type=int, required=True, metavar="L")
    p_torus.add_argument("--z-terms", type=int, default=8,
                         help="number of even series coefficients to emit")
    p_torus.add_argument("--max-lines", type=int, default=8)
    p_torus.add_argument("--format", choices=("json",), default="json")
    p_torus.add_argument("--out", default=None, metavar="PATH")
    p_torus.set_defaults(func=cmd_torus)

    p_verify = sub.add_parser("verify", help="run a golden verification suite")
    p_verify.add_argument("--suite", choices=SUITES, required=True)
    p_verify.add_argument("--scope", choices=("small", "full"), default="small")
    p_verify.add_argument("--format", choices=("text", "json"), default="text")
    p_verify.add_argument("--out", default=None, metavar="PATH")
    p_verify.add_argument("--catalog", default=None, metavar="FILE")
    p_verify.add_argument("--jobs", type=int, default=1)
    p_verify.set_defaults(func=cmd_verify)

    p_catalog = sub.add_parser("catalog", help="validate and list a knot catalog")
    p_catalog.add_argument("--path", default=None, metavar="FILE")
    p_catalog.add_argument("--out", default=None, metavar="PATH")
    p_catalog.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (KnotError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
