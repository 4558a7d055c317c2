"""Tests for the D-table solve and the line re-expansions."""

from fractions import Fraction

import pytest

from mmjones.exactalg import QPoly, TruncSeries, series_compose, series_pow1p
from mmjones.knots import BraidWord, catalog_lookup, default_catalog
from mmjones.mmexpand import (
    LineTable,
    ModelViolationError,
    OutOfRangeError,
    approx_poly,
    bottom_line_check,
    build_dtable,
    integrality_report,
    mirror_line_sign_map,
    reparam_series,
    to_htilde_lines,
    to_z_lines,
    z_lines_by_basis_change,
)

CATALOG = default_catalog()
UNKNOT = BraidWord(1, [])


def knot(name):
    return catalog_lookup(CATALOG, name)


@pytest.fixture(scope="module")
def d52():
    return build_dtable(knot("5_2"), 3)


@pytest.fixture(scope="module")
def d61():
    return build_dtable(knot("6_1"), 3)


@pytest.fixture(scope="module")
def d41():
    return build_dtable(knot("4_1"), 3)


class TestBuildDTable:
    def test_unknot(self):
        d = build_dtable(UNKNOT, 2)
        for m in range(3):
            for n in range(5):
                expected = 1 if (m, n) == (0, 0) else 0
                assert d.entry(m, n) == expected

    def test_5_2_examples(self, d52):
        assert d52.entry(1, 2) == -2
        assert d52.entry(0, 0) == 1

    def test_4_1_bottom_entry(self, d41):
        assert d41.entry(1, 2) == 1

    def test_vanishing_region(self, d52):
        for m in range(d52.N + 1):
            for n in range(2 * d52.N + 1):
                if 2 * m > n:
                    assert d52.entry(m, n) == 0

    def test_overdetermined_consistency(self):
        build_dtable(knot("4_1"), 2, extra_alphas=2)
        build_dtable(knot("5_2"), 2, extra_alphas=1)

    def test_parallel_jobs_match(self, d52):
        d = build_dtable(knot("5_2"), 3, jobs=2)
        assert d.entries == d52.entries

    def test_range_errors(self, d52):
        with pytest.raises(OutOfRangeError):
            d52.entry(0, 7)


class TestZLines:
    def test_unknot(self):
        zl = to_z_lines(build_dtable(UNKNOT, 2))
        assert zl.entry(0, 0) == 1
        assert all(c == 0 for n in range(1, 5) for c in zl.row(n))
        assert all(c == 0 for c in zl.row(0)[1:])

    def test_5_2_golden_entries(self, d52):
        zl = to_z_lines(d52)
        assert list(zl.row(0)) == [1, -2, 4, -8]
        assert list(zl.row(1)) == [0, -6, 31]
        assert list(zl.row(2)) == [2, -27, 226]
        assert list(zl.row(3)) == [4, -139]

    def test_6_1_golden_entries(self, d61):
        zl = to_z_lines(d61)
        assert list(zl.row(1)) == [0, 2, 11]
        assert list(zl.row(2)) == [-2, -19, -93]
        assert zl.entry(3, 1) == -35

    def test_routes_agree(self, d52, d61, d41):
        for d in (d52, d61, d41):
            assert to_z_lines(d).rows == z_lines_by_basis_change(d).rows

    def test_emission_ranges(self, d52):
        zl = to_z_lines(d52)
        for n in range(2 * d52.N + 1):
            assert len(zl.row(n)) == d52.N - (n + 1) // 2 + 1
        with pytest.raises(OutOfRangeError):
            zl.entry(0, d52.N + 1)


class TestHtildeLines:
    def test_reparam_series_closed_form(self):
        # the reparametrization squares to sum (-1)^k h^k starting at k=2
        cap = 10
        h_of_t = reparam_series(cap)
        # build t(h) = (1+h)^(1/2) - (1+h)^(-1/2) and check round trip
        t_of_h = series_pow1p(Fraction(1, 2), cap) - series_pow1p(Fraction(-1, 2), cap)
        round_trip = series_compose(TruncSeries("x", cap, h_of_t.coeffs), t_of_h)
        assert round_trip == TruncSeries.identity("h", cap)
        sq = t_of_h * t_of_h
        assert list(sq.coeffs) == [0, 0] + [(-1) ** k for k in range(2, cap + 1)]

    def test_4_1_golden(self, d41):
        tl = to_htilde_lines(d41)
        assert list(tl.row(0)) == [1, 1, 1, 1]
        assert list(tl.row(2)) == [-1, -5, -14]
        assert list(tl.row(4)) == [4, 48]
        assert all(c == 0 for c in tl.row(1))
        assert all(c == 0 for c in tl.row(3))

    def test_8_3_golden_small(self):
        d = build_dtable(knot("8_3"), 3)
        tl = to_htilde_lines(d)
        assert list(tl.row(0)) == [1, 4, 16, 64]
        assert list(tl.row(2)) == [-4, -76, -821]
        assert list(tl.row(4)) == [60, 2746]

    def test_mirror_sign_map(self):
        rec = knot("5_2")
        tl = to_htilde_lines(build_dtable(rec, 2))
        tl_mirror = to_htilde_lines(build_dtable(rec.braid.mirror(), 2))
        assert tl_mirror.rows == mirror_line_sign_map(tl).rows


class TestBottomLine:
    def test_catalog_knots(self, d52, d61, d41):
        for d, name in [(d52, "5_2"), (d61, "6_1"), (d41, "4_1")]:
            report = bottom_line_check(d, knot(name).conway)
            assert report.passed, (name, report)

    def test_unknot(self):
        report = bottom_line_check(build_dtable(UNKNOT, 2), QPoly.one())
        assert report.passed

    def test_detects_wrong_conway(self, d52):
        report = bottom_line_check(d52, knot("6_1").conway)
        assert not report.passed


class TestIntegrality:
    def test_5_2_h_lines_integral(self, d52):
        report = integrality_report(to_z_lines(d52))
        assert report.all_integer and not report.informational

    def test_6_1_htilde_fractional(self, d61):
        report = integrality_report(to_htilde_lines(d61), amphicheiral=False)
        assert not report.all_integer
        assert report.informational

    def test_4_1_htilde_integral(self, d41):
        report = integrality_report(to_htilde_lines(d41), amphicheiral=True)
        assert report.all_integer


class TestApproxPoly:
    def test_5_2_first_line(self):
        d = build_dtable(knot("5_2"), 5)
        lines = to_z_lines(d)
        ap = approx_poly(lines, knot("5_2").conway, 1, 3)
        assert ap.head_poly() == QPoly.from_z2_coeffs([0, -6, -5])
        assert ap.stabilized is True

    def test_4_1_htilde_line(self):
        d = build_dtable(knot("4_1"), 5)
        lines = to_htilde_lines(d)
        ap = approx_poly(lines, knot("4_1").conway, 2, 4)
        assert ap.head_poly() == QPoly.from_z2_coeffs([-1, -1])
        assert ap.stabilized is True

    def test_unknot_lines_vanish(self):
        d = build_dtable(UNKNOT, 3)
        lines = to_z_lines(d)
        for n in (1, 2, 3):
            ap = approx_poly(lines, QPoly.one(), n, 2 * n + 1)
            assert ap.head_poly().is_zero()
            assert all(c == 0 for c in ap.residual_window)

    def test_exponent_validation(self, d52):
        lines = to_z_lines(d52)
        with pytest.raises(ValueError):
            approx_poly(lines, knot("5_2").conway, 1, 4)
        with pytest.raises(OutOfRangeError):
            approx_poly(lines, knot("5_2").conway, 99, 199)

    def test_inconclusive_when_no_window(self):
        # N=2, n=2, exponent 5: head bound 2*4*... exceeds the guarantee
        d = build_dtable(knot("5_2"), 2)
        lines = to_z_lines(d)
        ap = approx_poly(lines, knot("5_2").conway, 2, 5)
        assert ap.stabilized is None
