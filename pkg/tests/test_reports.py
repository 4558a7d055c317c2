"""Serialization round trips and formatting rules."""

from fractions import Fraction

import pytest

from mmjones.knots import BraidWord
from mmjones.mmexpand import build_dtable, to_z_lines
from mmjones.reports import (
    dtable_doc,
    frac_str,
    linetable_doc,
    linetable_tsv,
    parse_dtable,
    parse_frac,
    parse_linetable,
    parse_linetable_tsv,
)


@pytest.fixture(scope="module")
def sample():
    d = build_dtable(BraidWord(3, [-1, -1, -1, -2, 1, -2]), 3)
    return d, to_z_lines(d)


def test_frac_strings():
    assert frac_str(Fraction(3)) == "3"
    assert frac_str(Fraction(-7, 2)) == "-7/2"
    assert parse_frac("-7/2") == Fraction(-7, 2)
    assert parse_frac("42") == Fraction(42)


def test_no_floats_anywhere(sample):
    d, lines = sample
    doc = dtable_doc(d)
    assert all(isinstance(c, str) for row in doc["rows"] for c in row)
    ldoc = linetable_doc(lines)
    assert all(isinstance(v, str) for row in ldoc["lines"] for v in row["values"])


def test_dtable_round_trip(sample):
    d, _ = sample
    assert parse_dtable(dtable_doc(d)).entries == d.entries


def test_linetable_round_trip(sample):
    _, lines = sample
    parsed = parse_linetable(linetable_doc(lines))
    assert parsed.rows == lines.rows and parsed.tag == lines.tag


def test_tsv_round_trip(sample):
    _, lines = sample
    text = linetable_tsv(lines)
    assert text.splitlines()[0] == "n\tm\tvalue"
    parsed = parse_linetable_tsv(text, lines.N, lines.tag)
    assert parsed.rows == lines.rows
