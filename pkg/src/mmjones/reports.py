"""Report documents and their JSON/TSV serialization.

Rationals serialize as decimal strings "p/q" (bare integer strings when the
denominator is 1); floats never appear.  Documents are built with fixed key
order so identical runs produce byte-identical output, and a parsed report
reconstructs the exact in-memory tables.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import IO, List, Optional

from .exactalg import QPoly
from .mmexpand import (
    ApproxPoly,
    BottomLineReport,
    DTable,
    IntegralityReport,
    LineTable,
)


def frac_str(x) -> str:
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def parse_frac(s: str) -> Fraction:
    s = s.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def qpoly_doc(p: QPoly) -> list:
    """Even-power coefficients of a polynomial in z^2, as strings."""
    if not p.only_even_powers():
        raise ValueError("expected a polynomial in z^2")
    return [frac_str(c) for c in p.even_part_coeffs()]


def dtable_doc(d: DTable) -> dict:
    return {
        "index": "rows are m = 0..N, columns n = 0..2N",
        "N": d.N,
        "rows": [[frac_str(c) for c in row] for row in d.entries],
    }


def parse_dtable(doc: dict) -> DTable:
    rows = tuple(tuple(parse_frac(c) for c in row) for row in doc["rows"])
    return DTable(doc["N"], rows)


def linetable_doc(lines: LineTable) -> dict:
    return {
        "parameter": lines.tag,
        "N": lines.N,
        "index": "row objects carry the line index n; values are m = 0..",
        "lines": [
            {"n": n, "values": [frac_str(c) for c in lines.row(n)]}
            for n in range(2 * lines.N + 1)
        ],
    }


def parse_linetable(doc: dict) -> LineTable:
    rows = [()] * (2 * doc["N"] + 1)
    for row in doc["lines"]:
        rows[row["n"]] = tuple(parse_frac(c) for c in row["values"])
    return LineTable(doc["N"], doc["parameter"], tuple(rows))


def bottom_line_doc(report: BottomLineReport) -> dict:
    return {
        "order": report.order,
        "passed": report.passed,
        "line_route_failures": list(report.line_route_failures),
        "substitution_route_failures": list(report.substitution_route_failures),
    }


def integrality_doc(report: IntegralityReport) -> dict:
    return {
        "parameter": report.tag,
        "all_integer": report.all_integer,
        "informational": report.informational,
        "violations": [
            {"n": n, "m": m, "value": frac_str(v)} for (n, m, v) in report.violations
        ],
    }


def approx_doc(ap: ApproxPoly) -> dict:
    return {
        "n": ap.n,
        "exponent": ap.exponent,
        "head": [frac_str(c) for c in ap.head],
        "residual_window": [frac_str(c) for c in ap.residual_window],
        "guaranteed_order": ap.guaranteed_order,
        "stabilized": ap.stabilized,
    }


def linetable_tsv(lines: LineTable) -> str:
    out = ["n\tm\tvalue"]
    for n in range(2 * lines.N + 1):
        for m, value in enumerate(lines.row(n)):
            out.append(f"{n}\t{m}\t{frac_str(value)}")
    return "\n".join(out) + "\n"


def parse_linetable_tsv(text: str, N: int, tag: str) -> LineTable:
    rows: List[list] = [[] for _ in range(2 * N + 1)]
    body = text.strip().splitlines()
    if body and body[0].startswith("n\t"):
        body = body[1:]
    for line in body:
        n, m, value = line.split("\t")
        rows[int(n)].insert(int(m), parse_frac(value))
    return LineTable(N, tag, tuple(tuple(r) for r in rows))


def dump_json(document: dict, stream: Optional[IO[str]] = None) -> str:
    text = json.dumps(document, indent=2, sort_keys=False)
    if stream is not None:
        stream.write(text + "\n")
    return text
