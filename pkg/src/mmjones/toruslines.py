"""Closed-form line generator for torus knots.

For a (p, q) torus knot the whole line expansion comes from one formula:
with nabla the Conway polynomial and D the second-order operator

    D f = z f' + (z^2 + 4) f'',

the generating series is

    V(z, h) = (1/z) (1+h)^c  sum_m (1/m!) (log(1+h) / (4pq))^m  g_m(z),

where c = (pq - p/q - q/p)/4 and g_m = D^m (z / nabla).  The coefficient of
h^n is the line V^(n)(z), a rational function whose reduced denominator
divides nabla^(2n+1); multiplying back by that power certifies the integer
numerator polynomial.

Only finitely many m contribute per h-order because log(1+h) has valuation
one, so every line is computed exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import List, Optional

from .exactalg import (
    InexactDivisionError,
    QPoly,
    RationalFn,
    TruncSeries,
    series_log1p,
    series_pow1p,
)
from .knots import TorusParams, conway_torus


class LineConsistencyError(Exception):
    """An oddness/divisibility/integrality certification failed."""


@dataclass(frozen=True)
class LineFunction:
    """One line of a torus knot: index, rational-function value, numerator."""

    n: int
    value: RationalFn
    numerator: Optional[QPoly] = None  # certified against nabla^(2n+1)

    def series_coeffs(self, z_cap: int) -> List[Fraction]:
        return list(self.value.series(z_cap).coeffs)


def apply_D(f: RationalFn) -> RationalFn:
    """z f' + (z^2 + 4) f'', reduced."""
    d1 = f.derivative()
    d2 = d1.derivative()
    z = QPoly([0, 1])
    shift = QPoly([4, 0, 1])
    return (d1 * z + d2 * shift).reduce()


def _derivative_chain(t: TorusParams, n_max: int) -> List[RationalFn]:
    nabla = conway_torus(t)
    g = RationalFn(QPoly([0, 1]), nabla)
    chain = [g]
    for _ in range(n_max):
        g = apply_D(g)
        chain.append(g)
    return chain


def _odd_numerator_over_z(f: RationalFn) -> RationalFn:
    """Divide an odd rational function by z exactly."""
    if not f.num.only_odd_powers() or not f.den.only_even_powers():
        raise LineConsistencyError("derivative chain lost its parity")
    num = QPoly(f.num.coeffs[1:])
    return RationalFn(num, f.den, reduce=False)


def torus_lines(t: TorusParams, n_max: int, h_cap: Optional[int] = None) -> List[LineFunction]:
    """Lines V^(0)..V^(n_max) of the (p, q) torus knot, certified.

    ``h_cap`` defaults to n_max; it must be at least n_max since the h^n
    coefficient needs the prefactor series through order n.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if h_cap is None:
        h_cap = n_max
    if h_cap < n_max:
        raise ValueError("h_cap must be >= n_max")
    p, q = t.p, t.q
    pq = p * q
    c = (Fraction(pq) - Fraction(p, q) - Fraction(q, p)) / 4
    prefactor = series_pow1p(c, h_cap)
    logf = series_log1p(h_cap) * Fraction(1, 4 * pq)
    chain = _derivative_chain(t, n_max)
    odd_over_z = [_odd_numerator_over_z(g) for g in chain]
    # weights[m] = (1+h)^c * (log(1+h)/(4pq))^m / m!
    weights: List[TruncSeries] = []
    log_pow = TruncSeries.constant("h", h_cap, 1)
    for m in range(n_max + 1):
        if m > 0:
            log_pow = log_pow * logf
        weights.append(prefactor * log_pow * Fraction(1, factorial(m)))
    nabla = conway_torus(t)
    lines = []
    for n in range(n_max + 1):
        acc = RationalFn.zero()
        for m in range(n + 1):
            w = weights[m].coeff(n)
            if w:
                acc = acc + odd_over_z[m] * w
        lf = LineFunction(n, acc)
        numerator = certify_numerator(lf, nabla)
        lines.append(LineFunction(n, acc, numerator))
    return lines


def certify_numerator(lf: LineFunction, conway: QPoly) -> QPoly:
    """Certify value = P / conway^(2n+1) with P an integer polynomial in z^2."""
    power = conway ** (2 * lf.n + 1)
    try:
        numerator = lf.value.numerator_against(power)
    except InexactDivisionError as exc:
        raise LineConsistencyError(
            f"line {lf.n}: denominator does not divide the required Conway power"
        ) from exc
    if not numerator.only_even_powers():
        raise LineConsistencyError(f"line {lf.n}: numerator has odd powers")
    if not numerator.has_integer_coeffs():
        raise LineConsistencyError(f"line {lf.n}: numerator is not integral")
    return numerator


def torus_line_series(t: TorusParams, n: int, z_cap: int) -> List[Fraction]:
    """z-power-series coefficients of the line V^(n), through z^z_cap.

    This is the bridge to the braid pipeline: the coefficient of z^(2m)
    here must equal the d^(n)_m entry computed from the torus braid.
    """
    lines = torus_lines(t, n)
    coeffs = lines[n].series_coeffs(z_cap)
    for ccoef in coeffs:
        if ccoef.denominator != 1:
            raise LineConsistencyError(
                f"line {n}: series coefficient {ccoef} is not an integer"
            )
    return coeffs
