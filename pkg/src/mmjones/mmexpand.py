"""Expansion pipeline: D-tables, z-lines, reparametrized lines, approximants.

The colored Jones polynomial of a knot expands as a double series
``sum D[m][n] alpha^(2m) h^n`` with h = q-hat - 1; the coefficients are
recovered exactly by solving, for each power of h, the Vandermonde system
in alpha^2 over the colors alpha = 1..N+1.  The table is then re-expanded
into lines ``V^(n)(z) = sum d^(n)_m z^(2m)`` in the variable
z = q-hat^(alpha/2) - q-hat^(-alpha/2), by two independent routes that must
agree entry-by-entry:

* the substitution route, which rewrites alpha*h through the inverse
  hyperbolic substitution and collects a bi-series in (z, h);
* the basis-change route, which solves the unitriangular change of basis
  between the alpha^(2m) h^n and z^(2m) h^n monomials directly.

A further reparametrization replaces h by the mirror-friendly variable
t = (1+h)^(1/2) - (1+h)^(-1/2) (written ``ht`` in tags); the substitution
series comes from the closed form h = u*t with u = t/2 + sqrt(1 + (t/2)^2),
u the square root of q-hat.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .cjones import jones_h_series
from .exactalg import (
    BiSeries,
    QPoly,
    TruncSeries,
    series_compose,
    series_log1p,
    series_pow1p,
    series_two_arcsinh_half,
    solve_linear_system,
)
from .knots import BraidWord, KnotRecord


class ModelViolationError(Exception):
    """The solved table violates a structural identity (vanishing, fit, parity)."""


class OutOfRangeError(Exception):
    """A requested line or entry lies beyond what the truncation knows."""


ZERO = Fraction(0)
ONE = Fraction(1)


def _braid_of(knot: Union[KnotRecord, BraidWord]) -> BraidWord:
    return knot.braid if isinstance(knot, KnotRecord) else knot


# ---------------------------------------------------------------------------
# D-table
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DTable:
    """Exact coefficients D[m][n] of alpha^(2m) h^n, 0 <= m <= N, 0 <= n <= 2N."""

    N: int
    entries: tuple  # entries[m][n]

    def entry(self, m: int, n: int) -> Fraction:
        if not (0 <= m <= self.N and 0 <= n <= 2 * self.N):
            raise OutOfRangeError(f"D[{m}][{n}] outside the (N={self.N}) budget")
        return self.entries[m][n]

    def boundary_coeffs(self) -> List[Fraction]:
        """The diagonal D[m][2m], m = 0..N."""
        return [self.entries[m][2 * m] for m in range(self.N + 1)]


def _h_series_job(args) -> list:
    strands, letters, alpha, cap = args
    return jones_h_series(BraidWord(strands, letters), alpha, cap)


def _jones_rows(b: BraidWord, alphas: Sequence[int], cap: int, jobs: int = 1):
    if jobs > 1 and len(alphas) > 1:
        from concurrent.futures import ProcessPoolExecutor

        args = [(b.strands, b.letters, a, cap) for a in alphas]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_h_series_job, args))
    return [jones_h_series(b, a, cap) for a in alphas]


def build_dtable(
    knot: Union[KnotRecord, BraidWord],
    N: int,
    jobs: int = 1,
    extra_alphas: int = 0,
) -> DTable:
    """Solve for the D-table of a knot at order budget N.

    Evaluates the h-expansion of the colored Jones polynomial to order 2N
    for the colors alpha = 1..N+1, then for each h-order solves the square
    Vandermonde system in alpha^2 exactly.  Theorem-level structure is
    asserted after the solve: entries with 2m > n vanish and D[0][0] = 1.
    With ``extra_alphas`` > 0, additional colors are computed and used as
    hard consistency checks (the polynomial model must fit them exactly).
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    b = _braid_of(knot)
    cap = 2 * N
    alphas = list(range(1, N + 2 + extra_alphas))
    rows = _jones_rows(b, alphas, cap, jobs=jobs)
    matrix = [[Fraction(a * a) ** m for m in range(N + 1)] for a in alphas[: N + 1]]
    rhs = [[rows[i][n] for i in range(N + 1)] for n in range(cap + 1)]
    sols = solve_linear_system(matrix, rhs)
    entries = [[sols[n][m] for n in range(cap + 1)] for m in range(N + 1)]
    for n in range(cap + 1):
        for m in range(N + 1):
            if 2 * m > n and entries[m][n] != 0:
                raise ModelViolationError(
                    f"vanishing violated: D[{m}][{n}] = {entries[m][n]} with 2m > n"
                )
    if entries[0][0] != 1:
        raise ModelViolationError(f"D[0][0] = {entries[0][0]}, expected 1")
    for i in range(N + 1, len(alphas)):
        a2 = Fraction(alphas[i] ** 2)
        for n in range(cap + 1):
            fit = sum(entries[m][n] * a2 ** m for m in range(N + 1))
            if fit != rows[i][n]:
                raise ModelViolationError(
                    f"overdetermination failed at alpha={alphas[i]}, h^{n}"
                )
    return DTable(N, tuple(tuple(row) for row in entries))


# ---------------------------------------------------------------------------
# Line tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LineTable:
    """Exact line coefficients d^(n)_m, emitted only inside the valid range.

    ``tag`` is 'h' for the plain expansion variable and 'ht' for the
    mirror-friendly reparametrization.
    """

    N: int
    tag: str
    rows: tuple  # rows[n] = tuple of coefficients for m = 0..available_m(n)

    def available_m(self, n: int) -> int:
        return self.N - (n + 1) // 2

    def row(self, n: int) -> Tuple[Fraction, ...]:
        if not (0 <= n <= 2 * self.N):
            raise OutOfRangeError(f"line {n} outside budget 2N = {2 * self.N}")
        return self.rows[n]

    def entry(self, n: int, m: int) -> Fraction:
        row = self.row(n)
        if m >= len(row):
            raise OutOfRangeError(
                f"d^({n})_{m} is beyond the truncation (m <= {len(row) - 1})"
            )
        return row[m]

    def line_series(self, n: int) -> TruncSeries:
        """The truncated line as a series in z (even powers only)."""
        row = self.row(n)
        coeffs = []
        for c in row:
            coeffs.extend([c, ZERO])
        if coeffs:
            coeffs.pop()
        return TruncSeries("z", 2 * (len(row) - 1) if row else 0, coeffs)


def _h_over_log1p(cap: int) -> TruncSeries:
    # log(1+h)/h = sum (-1)^n h^n/(n+1); invert to get h/log(1+h)
    base = TruncSeries(
        "h", cap, [Fraction((-1) ** n, n + 1) for n in range(cap + 1)]
    )
    return base.invert()


def to_z_lines(d: DTable) -> LineTable:
    """Re-expand the D-table in (z, h) through the hyperbolic substitution.

    alpha*h is replaced by s(z) * h/log(1+h) with s the odd series
    2*arcsinh(z/2); the resulting bi-series is collected and read off line
    by line.  Only even z-powers may appear.
    """
    N = d.N
    cap = 2 * N
    bi = _z_h_biseries(d)
    rows = []
    for n in range(cap + 1):
        top_m = N - (n + 1) // 2
        rows.append(tuple(bi.get(2 * m, n) for m in range(top_m + 1)))
    return LineTable(N, "h", tuple(rows))


def z_lines_by_basis_change(d: DTable) -> LineTable:
    """Independent route: triangular change of basis between monomial families.

    Expands z^(2m) h^n in the alpha^(2j) h^k basis using
    z = (1+h)^(alpha/2) - (1+h)^(-alpha/2) and back-solves the unitriangular
    system; serves as the oracle for :func:`to_z_lines`.
    """
    N = d.N
    cap = 2 * N
    half_log = series_log1p(cap) * Fraction(1, 2)
    # z = sum_i c_i(h) alpha^(2i+1),  c_i = 2 * half_log^(2i+1) / (2i+1)!
    c: List[TruncSeries] = []
    power = half_log
    for i in range(N + 1):
        c.append(power * Fraction(2, factorial(2 * i + 1)))
        power = power * half_log * half_log
    # z^2 as a polynomial in alpha^2 with series coefficients
    z2: Dict[int, TruncSeries] = {}
    for a in range(len(c)):
        for bidx in range(len(c)):
            j = a + bidx + 1
            if j > N:
                continue
            term = c[a] * c[bidx]
            z2[j] = z2[j] + term if j in z2 else term
    # powers[m][j] = alpha^(2j)-coefficient series of z^(2m)
    powers: List[Dict[int, TruncSeries]] = [{0: TruncSeries.constant("h", cap, 1)}]
    for m in range(1, N + 1):
        prev = powers[-1]
        new: Dict[int, TruncSeries] = {}
        for j1, s1 in prev.items():
            for j2, s2 in z2.items():
                j = j1 + j2
                if j > N:
                    continue
                term = s1 * s2
                new[j] = new[j] + term if j in new else term
        powers.append(new)
    solved: Dict[Tuple[int, int], Fraction] = {}
    for level in range(cap + 1):  # level = n + 2m = k at the diagonal
        for j in range(min(N, level // 2) + 1):
            k = level
            n_diag = k - 2 * j
            acc = d.entries[j][k]
            for m in range(j + 1):
                pm = powers[m].get(j)
                if pm is None:
                    continue
                for n in range(0, k - 2 * j + 1):
                    if m == j and n == n_diag:
                        continue
                    val = solved.get((n, m))
                    if val is None or val == 0:
                        continue
                    acc -= val * pm.coeffs[k - n]
            solved[(n_diag, j)] = acc
    rows = []
    for n in range(cap + 1):
        top_m = N - (n + 1) // 2
        rows.append(tuple(solved[(n, m)] for m in range(top_m + 1)))
    return LineTable(N, "h", tuple(rows))


def reparam_series(cap: int) -> TruncSeries:
    """h as a series in the mirror-friendly variable t (tagged 'ht').

    From u = t/2 + sqrt(1 + (t/2)^2) and h = u*t - ... : h = t^2/2 + t*sqrt(1+(t/2)^2).
    """
    quarter_sq = TruncSeries("ht", cap, [ZERO, ZERO, Fraction(1, 4)])
    root = series_compose(series_pow1p(Fraction(1, 2), cap, var="_r"), quarter_sq)
    t = TruncSeries.identity("ht", cap)
    half_sq = TruncSeries("ht", cap, [ZERO, ZERO, Fraction(1, 2)])
    return half_sq + t * root


def to_htilde_lines(d: DTable) -> LineTable:
    """Re-expand the same bi-series with h written in the mirror variable.

    Each z-row of the (z, h) bi-series is only valid through h-order
    2(N - m); the substitution series has valuation 1, so validity is
    preserved row by row and the emitted ranges match the h-table's.
    """
    N = d.N
    cap = 2 * N
    zl = _z_h_biseries(d)
    sub = reparam_series(cap)
    rows_by_m: List[TruncSeries] = []
    for m in range(N + 1):
        valid = 2 * (N - m)
        row = TruncSeries("h", valid, zl.rows[2 * m][: valid + 1])
        rows_by_m.append(series_compose(row, sub.truncate(valid)))
    rows = []
    for n in range(cap + 1):
        top_m = N - (n + 1) // 2
        rows.append(tuple(rows_by_m[m].coeff(n) for m in range(top_m + 1)))
    return LineTable(N, "ht", tuple(rows))


def _z_h_biseries(d: DTable) -> BiSeries:
    """The collected (z, h) bi-series used by both reparametrizations."""
    N = d.N
    cap = 2 * N
    s = series_two_arcsinh_half(cap)
    lfac = _h_over_log1p(cap)
    grid = [[ZERO] * (cap + 1) for _ in range(cap + 1)]
    s_pow = TruncSeries.constant("z", cap, 1)
    l_pow = TruncSeries.constant("h", cap, 1)
    s2 = s * s
    l2 = lfac * lfac
    for m in range(N + 1):
        if m > 0:
            s_pow = s_pow * s2
            l_pow = l_pow * l2
        for n in range(0, cap + 1 - 2 * m):
            coeff = d.entries[m][n + 2 * m]
            if coeff == 0:
                continue
            for zd in range(cap + 1):
                a = s_pow.coeffs[zd]
                if a == 0:
                    continue
                ca = coeff * a
                row = grid[zd]
                for hd in range(cap + 1 - n):
                    bcf = l_pow.coeffs[hd]
                    if bcf:
                        row[hd + n] += ca * bcf
    bi = BiSeries(cap, cap, grid)
    if not bi.odd_z_rows_zero():
        raise ModelViolationError("odd z-powers appeared in the line collection")
    return bi


# ---------------------------------------------------------------------------
# Structure checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BottomLineReport:
    """Result of the bottom-line identity checks against the Conway polynomial."""

    order: int
    line_route_failures: tuple
    substitution_route_failures: tuple

    @property
    def passed(self) -> bool:
        return not self.line_route_failures and not self.substitution_route_failures


def bottom_line_check(d: DTable, conway: QPoly) -> BottomLineReport:
    """Verify that the bottom line is the inverse Conway polynomial.

    Two routes must both give 1 through the available order: the solved
    z-line multiplied by the Conway polynomial, and the boundary D[m][2m]
    coefficients composed with the odd substitution series directly.
    """
    N = d.N
    cap = 2 * N
    conway_series = TruncSeries("z", cap, conway.coeffs)
    line = to_z_lines(d).line_series(0).pad_exact(cap)
    prod1 = line * conway_series
    fail1 = tuple(
        k for k in range(cap + 1) if prod1.coeff(k) != (1 if k == 0 else 0)
    )
    s = series_two_arcsinh_half(cap)
    s2 = s * s
    acc = TruncSeries.zero("z", cap)
    s_pow = TruncSeries.constant("z", cap, 1)
    for m, coeff in enumerate(d.boundary_coeffs()):
        if m > 0:
            s_pow = s_pow * s2
        acc = acc + s_pow * coeff
    prod2 = acc * conway_series
    fail2 = tuple(
        k for k in range(cap + 1) if prod2.coeff(k) != (1 if k == 0 else 0)
    )
    return BottomLineReport(cap, fail1, fail2)


@dataclass(frozen=True)
class IntegralityReport:
    """Non-integer line entries, with their table position."""

    tag: str
    informational: bool
    violations: tuple  # (n, m, Fraction)

    @property
    def all_integer(self) -> bool:
        return not self.violations


def integrality_report(lines: LineTable, amphicheiral: bool = False) -> IntegralityReport:
    """List every non-integer entry of a line table.

    For the reparametrized table of a non-amphicheiral knot, fractional
    entries are expected and reported as informational rather than as
    violations of the integrality conjecture.
    """
    violations = []
    for n in range(2 * lines.N + 1):
        for m, value in enumerate(lines.row(n)):
            if value.denominator != 1:
                violations.append((n, m, value))
    informational = lines.tag == "ht" and not amphicheiral
    return IntegralityReport(lines.tag, informational, tuple(violations))


# ---------------------------------------------------------------------------
# Approximate numerator polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ApproxPoly:
    """Truncated line times a Conway power, split into head and residual window.

    ``head`` covers even z-degrees up to the structural degree bound
    (exponent - 1) * deg(Conway); ``residual_window`` covers the remaining
    computable orders.  ``stabilized`` is True when the window is nonempty
    and exactly zero, False when some window entry is nonzero, and None
    (inconclusive) when the truncation leaves no window at all.
    """

    n: int
    exponent: int
    head: tuple  # coefficients of z^0, z^2, ... up to the head bound
    residual_window: tuple  # coefficients beyond the head, through the guarantee
    guaranteed_order: int

    @property
    def stabilized(self) -> Optional[bool]:
        if not self.residual_window:
            return None
        return all(c == 0 for c in self.residual_window)

    def head_poly(self) -> QPoly:
        return QPoly.from_z2_coeffs(self.head)


def _allowed_exponents(n: int) -> list:
    allowed = [2 * n + 1]
    if n % 2 == 0:
        allowed.append(3 * (n // 2) + 1)
    return allowed


def approx_poly(lines: LineTable, conway: QPoly, n: int, exponent: int) -> ApproxPoly:
    """Multiply the truncated line n by conway**exponent and split the result.

    The product is only trustworthy through the order guaranteed by the
    truncation (twice the largest available m); coefficients beyond the
    structural degree bound but inside the guarantee form the residual
    window, which is exactly zero whenever the line is the expansion of a
    rational function with the matching denominator power.
    """
    if n > 2 * lines.N:
        raise OutOfRangeError(f"line {n} beyond budget 2N = {2 * lines.N}")
    if exponent not in _allowed_exponents(n):
        raise ValueError(
            f"exponent {exponent} not in {{2n+1, 3(n/2)+1}} for line {n}"
        )
    row = lines.row(n)
    guaranteed = 2 * (len(row) - 1)
    conway_series = TruncSeries("z", guaranteed, conway.coeffs)
    prod = lines.line_series(n).pad_exact(guaranteed)
    for _ in range(exponent):
        prod = prod * conway_series
    head_bound = (exponent - 1) * conway.degree
    head = [prod.coeff(2 * j) for j in range(0, min(head_bound, guaranteed) // 2 + 1)]
    window = [
        prod.coeff(2 * j)
        for j in range(min(head_bound, guaranteed) // 2 + 1, guaranteed // 2 + 1)
    ]
    return ApproxPoly(n, exponent, tuple(head), tuple(window), guaranteed)


def mirror_line_sign_map(lines: LineTable) -> LineTable:
    """The mirror image's reparametrized table: d^(n)_m -> (-1)^n d^(n)_m."""
    rows = tuple(
        tuple(c if n % 2 == 0 else -c for c in lines.rows[n])
        for n in range(len(lines.rows))
    )
    return LineTable(lines.N, lines.tag, rows)
