"""Exact scalar, polynomial, Laurent, truncated-series and rational-function arithmetic.

Everything here is immutable after construction and computes over exact
rationals (``fractions.Fraction``) or exact integers.  No floats anywhere.

Conventions used throughout the package:

* ``Rational`` is an alias for ``fractions.Fraction`` (always reduced,
  positive denominator, canonical zero).
* ``LaurentPoly`` is an integer-coefficient Laurent polynomial in a single
  formal variable identified by a short tag ('q', 'u', 't', 'x').
* ``QPoly`` is a dense polynomial in z with rational coefficients.
* ``TruncSeries`` is a power series truncated at a fixed cap; arithmetic
  never reports coefficients beyond the minimum cap of its operands.
* ``BiSeries`` is a doubly truncated series in (z, h).
* ``RationalFn`` is a ratio of two ``QPoly`` with the denominator
  normalized to constant term 1.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Sequence, Union

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


class ExactAlgError(Exception):
    """Base class for arithmetic-layer failures."""


class CompositionError(ExactAlgError):
    """Series composition with an inner series of nonzero constant term."""


class InexactDivisionError(ExactAlgError):
    """A division that was required to be exact left a remainder."""


class InvalidRationalFunctionError(ExactAlgError):
    """Zero denominator or a denominator that cannot be normalized."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


# ---------------------------------------------------------------------------
# Laurent polynomials over Z
# ---------------------------------------------------------------------------


class LaurentPoly:
    """Finitely supported Laurent polynomial with integer coefficients.

    Stored as a map exponent -> coefficient with no zero entries.  The
    variable tag is carried along and mixed-variable arithmetic is refused.
    """

    __slots__ = ("var", "terms")

    def __init__(self, var: str, terms=None):
        self.var = var
        clean = {}
        if terms:
            for e, c in terms.items():
                if not isinstance(c, int):
                    raise TypeError("Laurent coefficients must be int")
                if c:
                    clean[int(e)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, var: str) -> "LaurentPoly":
        return cls(var, {})

    @classmethod
    def one(cls, var: str) -> "LaurentPoly":
        return cls(var, {0: 1})

    @classmethod
    def monomial(cls, var: str, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls(var, {exp: coeff})

    # -- predicates / accessors ----------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, exp: int) -> int:
        return self.terms.get(exp, 0)

    def min_exp(self) -> int:
        return min(self.terms)

    def max_exp(self) -> int:
        return max(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.var == other.var
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.var, tuple(sorted(self.terms.items()))))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- ring operations ------------------------------------------------

    def _check(self, other: "LaurentPoly"):
        if self.var != other.var:
            raise ValueError(f"variable mismatch: {self.var} vs {other.var}")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly(self.var, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.var, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly(self.var, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LaurentPoly(self.var, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_monomial():
                raise InexactDivisionError("negative power of a non-monomial")
            ((e, c),) = self.terms.items()
            if c not in (1, -1):
                raise InexactDivisionError("negative power needs unit coefficient")
            return LaurentPoly(self.var, {e * k: 1 if c == 1 or k % 2 == 0 else -1})
        out = LaurentPoly.one(self.var)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by var**k."""
        return LaurentPoly(self.var, {e + k: c for e, c in self.terms.items()})

    def invert_variable(self) -> "LaurentPoly":
        """Substitute var -> var**-1."""
        return LaurentPoly(self.var, {-e: c for e, c in self.terms.items()})

    def retag(self, var: str) -> "LaurentPoly":
        return LaurentPoly(var, dict(self.terms))

    def rescale_exponents(self, k: int, var: str | None = None) -> "LaurentPoly":
        """Substitute var -> var**k (k > 0), optionally retagging."""
        return LaurentPoly(var or self.var, {e * k: c for e, c in self.terms.items()})

    def exponents_divisible_by(self, k: int) -> bool:
        return all(e % k == 0 for e in self.terms)

    def compress_exponents(self, k: int, var: str) -> "LaurentPoly":
        """Substitute var**k -> new variable; all exponents must be multiples of k."""
        if not self.exponents_divisible_by(k):
            raise InexactDivisionError(f"exponents not all divisible by {k}")
        return LaurentPoly(var, {e // k: c for e, c in self.terms.items()})

    def is_symmetric(self) -> bool:
        """True iff invariant under var -> var**-1."""
        return all(self.terms.get(-e, 0) == c for e, c in self.terms.items())

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division in Z[var, var**-1]; raises if a remainder is left."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("Laurent division by zero")
        if self.is_zero():
            return LaurentPoly.zero(self.var)
        # shift so both are honest polynomials with nonzero constant term
        rem = dict(self.shift(-self.min_exp()).terms)
        den = other.shift(-other.min_exp())
        shift_back = self.min_exp() - other.min_exp()
        dlead = den.max_exp()
        dlc = den.terms[dlead]
        quot: dict = {}
        while rem:
            rlead = max(rem)
            if rlead < dlead:
                raise InexactDivisionError("inexact Laurent division")
            q, r = divmod(rem[rlead], dlc)
            if r:
                raise InexactDivisionError("inexact Laurent division (leading coeff)")
            qe = rlead - dlead
            quot[qe] = quot.get(qe, 0) + q
            for e, c in den.terms.items():
                ne = e + qe
                s = rem.get(ne, 0) - c * q
                if s:
                    rem[ne] = s
                else:
                    rem.pop(ne, None)
        return LaurentPoly(self.var, quot).shift(shift_back)

    def evaluate_at_one(self) -> int:
        return sum(self.terms.values())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if e == 0:
                bits.append(f"{c}")
            elif e == 1:
                bits.append(f"{c}*{self.var}")
            else:
                bits.append(f"{c}*{self.var}^{e}")
        return " + ".join(bits)


# ---------------------------------------------------------------------------
# Dense polynomials over Q (variable z unless stated otherwise)
# ---------------------------------------------------------------------------


class QPoly:
    """Dense polynomial with exact rational coefficients, index = power of z."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "QPoly":
        return cls(())

    @classmethod
    def one(cls) -> "QPoly":
        return cls((1,))

    @classmethod
    def from_z2_coeffs(cls, even_coeffs: Iterable) -> "QPoly":
        """Build a polynomial in z**2 from the coefficients of z^0, z^2, z^4, ..."""
        out = []
        for c in even_coeffs:
            out.append(_frac(c))
            out.append(_ZERO)
        if out:
            out.pop()
        return cls(out)

    # -- accessors ------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else _ZERO

    def constant_term(self) -> Fraction:
        return self.coeff(0)

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def even_part_coeffs(self) -> list:
        return [self.coeff(2 * m) for m in range((len(self.coeffs) + 1) // 2)]

    def only_even_powers(self) -> bool:
        return all(c == 0 for c in self.coeffs[1::2])

    def only_odd_powers(self) -> bool:
        return all(c == 0 for c in self.coeffs[0::2])

    def has_integer_coeffs(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> list:
        if not self.has_integer_coeffs():
            raise ValueError("non-integer coefficient present")
        return [int(c) for c in self.coeffs]

    def __eq__(self, other) -> bool:
        return isinstance(other, QPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- ring operations --------------------------------------------------

    def __add__(self, other: "QPoly") -> "QPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly(out)

    def __neg__(self) -> "QPoly":
        return QPoly([-c for c in self.coeffs])

    def __sub__(self, other: "QPoly") -> "QPoly":
        return self + (-other)

    def __mul__(self, other) -> "QPoly":
        if isinstance(other, (int, Fraction)):
            o = _frac(other)
            return QPoly([c * o for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return QPoly.zero()
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QPoly":
        if k < 0:
            raise ValueError("negative polynomial power")
        out = QPoly.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def shift(self, k: int) -> "QPoly":
        """Multiply by z**k (k >= 0)."""
        return QPoly((_ZERO,) * k + self.coeffs)

    def divmod(self, other: "QPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dl = other.degree
        dlc = other.leading()
        q = [_ZERO] * max(0, len(rem) - dl)
        while len(rem) - 1 >= dl and rem:
            lead = rem[-1]
            if lead == 0:
                rem.pop()
                continue
            k = len(rem) - 1 - dl
            f = lead / dlc
            q[k] = f
            for i, c in enumerate(other.coeffs):
                rem[k + i] -= f * c
            rem.pop()
        return QPoly(q), QPoly(rem)

    def exact_div(self, other: "QPoly") -> "QPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise InexactDivisionError("inexact polynomial division")
        return q

    def derivative(self) -> "QPoly":
        return QPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def compose(self, inner: "QPoly") -> "QPoly":
        out = QPoly.zero()
        for c in reversed(self.coeffs):
            out = out * inner + QPoly((c,))
        return out

    def evaluate(self, x) -> Fraction:
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "QPoly":
        if self.is_zero():
            return self
        inv = 1 / self.leading()
        return self * inv

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        bits = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                bits.append(str(c))
            elif i == 1:
                bits.append(f"{c}*z")
            else:
                bits.append(f"{c}*z^{i}")
        return " + ".join(bits)


def poly_gcd(a: QPoly, b: QPoly) -> QPoly:
    """Monic Euclidean GCD over Q."""
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r
    if a.is_zero():
        return a
    return a.monic()


# ---------------------------------------------------------------------------
# Exact linear solving (rational Gaussian elimination)
# ---------------------------------------------------------------------------


def solve_linear_system(matrix: Sequence[Sequence], rhs_columns: Sequence[Sequence]):
    """Solve A x = b for several right-hand sides with exact rationals.

    ``matrix`` is square; ``rhs_columns`` is a list of right-hand-side
    vectors.  Returns the list of solution vectors.  Raises
    ``ExactAlgError`` on a singular matrix.
    """
    n = len(matrix)
    a = [[_frac(v) for v in row] for row in matrix]
    bs = [[_frac(v) for v in col] for col in rhs_columns]
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    if any(len(col) != n for col in bs):
        raise ValueError("rhs length mismatch")
    perm = list(range(n))
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ExactAlgError("singular linear system")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            for b in bs:
                b[col], b[piv] = b[piv], b[col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] * inv
            if f == 0:
                continue
            for c in range(col, n):
                a[r][c] -= f * a[col][c]
            for b in bs:
                b[r] -= f * b[col]
    del perm
    sols = []
    for b in bs:
        x = [_ZERO] * n
        for r in range(n - 1, -1, -1):
            s = b[r]
            row = a[r]
            for c in range(r + 1, n):
                s -= row[c] * x[c]
            x[r] = s / row[r]
        sols.append(x)
    return sols


# ---------------------------------------------------------------------------
# Truncated power series over Q
# ---------------------------------------------------------------------------


class TruncSeries:
    """Power series truncated at ``cap`` (highest retained power).

    Arithmetic propagates the minimum cap of the operands, so an operation
    never fabricates coefficients its inputs do not know.
    """

    __slots__ = ("var", "cap", "coeffs")

    def __init__(self, var: str, cap: int, coeffs: Iterable = ()):
        if cap < 0:
            raise ValueError("cap must be >= 0")
        cs = [_frac(c) for c in coeffs]
        if len(cs) > cap + 1:
            cs = cs[: cap + 1]
        cs += [_ZERO] * (cap + 1 - len(cs))
        self.var = var
        self.cap = cap
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, var: str, cap: int) -> "TruncSeries":
        return cls(var, cap)

    @classmethod
    def constant(cls, var: str, cap: int, value) -> "TruncSeries":
        return cls(var, cap, (value,))

    @classmethod
    def identity(cls, var: str, cap: int) -> "TruncSeries":
        return cls(var, cap, (0, 1))

    def coeff(self, k: int) -> Fraction:
        if k < 0:
            return _ZERO
        if k > self.cap:
            raise IndexError(f"coefficient {k} beyond cap {self.cap}")
        return self.coeffs[k]

    def constant_term(self) -> Fraction:
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncSeries)
            and self.var == other.var
            and self.cap == other.cap
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.var, self.cap, self.coeffs))

    def _check(self, other: "TruncSeries"):
        if self.var != other.var:
            raise ValueError(f"variable mismatch: {self.var} vs {other.var}")

    def truncate(self, cap: int) -> "TruncSeries":
        if cap > self.cap:
            raise ValueError("truncate cannot extend knowledge; use pad_exact")
        if cap == self.cap:
            return self
        return TruncSeries(self.var, cap, self.coeffs[: cap + 1])

    def pad_exact(self, cap: int) -> "TruncSeries":
        """Extend the cap, declaring the tail exactly zero.

        Only valid when the series is known to be an exact polynomial
        (e.g. a finite binomial expansion); the caller asserts that.
        """
        if cap < self.cap:
            return self.truncate(cap)
        return TruncSeries(self.var, cap, self.coeffs)

    def __add__(self, other) -> "TruncSeries":
        if isinstance(other, (int, Fraction)):
            out = list(self.coeffs)
            out[0] += _frac(other)
            return TruncSeries(self.var, self.cap, out)
        self._check(other)
        cap = min(self.cap, other.cap)
        return TruncSeries(
            self.var, cap, [self.coeffs[k] + other.coeffs[k] for k in range(cap + 1)]
        )

    __radd__ = __add__

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.var, self.cap, [-c for c in self.coeffs])

    def __sub__(self, other) -> "TruncSeries":
        return self + (-other if isinstance(other, TruncSeries) else -_frac(other))

    def __mul__(self, other) -> "TruncSeries":
        if isinstance(other, (int, Fraction)):
            o = _frac(other)
            return TruncSeries(self.var, self.cap, [c * o for c in self.coeffs])
        self._check(other)
        cap = min(self.cap, other.cap)
        out = [_ZERO] * (cap + 1)
        for i, a in enumerate(self.coeffs[: cap + 1]):
            if a == 0:
                continue
            for j in range(cap + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return TruncSeries(self.var, cap, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "TruncSeries":
        if k < 0:
            return self.invert() ** (-k)
        out = TruncSeries.constant(self.var, self.cap, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def invert(self) -> "TruncSeries":
        """Multiplicative inverse; requires a nonzero constant term."""
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ExactAlgError("cannot invert a series with zero constant term")
        inv0 = 1 / c0
        out = [inv0] + [_ZERO] * self.cap
        for k in range(1, self.cap + 1):
            s = _ZERO
            for j in range(1, k + 1):
                if self.coeffs[j]:
                    s += self.coeffs[j] * out[k - j]
            out[k] = -inv0 * s
        return TruncSeries(self.var, self.cap, out)

    def valuation(self) -> int:
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        return self.cap + 1

    def retag(self, var: str) -> "TruncSeries":
        return TruncSeries(var, self.cap, self.coeffs)

    def __repr__(self) -> str:
        bits = [
            f"{c}*{self.var}^{k}" for k, c in enumerate(self.coeffs) if c != 0
        ]
        body = " + ".join(bits) if bits else "0"
        return f"{body} + O({self.var}^{self.cap + 1})"


def series_log1p(cap: int, var: str = "h") -> TruncSeries:
    """log(1 + h) truncated at ``cap``."""
    coeffs = [_ZERO] + [Fraction((-1) ** (n + 1), n) for n in range(1, cap + 1)]
    return TruncSeries(var, cap, coeffs)


def series_pow1p(c, cap: int, var: str = "h") -> TruncSeries:
    """(1 + h)**c as a binomial series with rational exponent c."""
    c = _frac(c)
    coeffs = [_ONE]
    acc = _ONE
    for k in range(1, cap + 1):
        acc = acc * (c - (k - 1)) / k
        coeffs.append(acc)
    return TruncSeries(var, cap, coeffs)


def series_two_arcsinh_half(cap: int, var: str = "z") -> TruncSeries:
    """2*log(sqrt(1 + (z/2)^2) + z/2) truncated at ``cap``.

    Built from the square-root binomial series and the logarithm series,
    so it stays independent of the term-wise-integration identity used as
    an oracle in the tests.
    """
    # inner = sqrt(1 + (z/2)^2) + z/2 - 1, a series with zero constant term
    half_sq = TruncSeries(var, cap, [_ZERO, _ZERO, Fraction(1, 4)])
    root = _compose_into(series_pow1p(Fraction(1, 2), cap, var="_t"), half_sq)
    inner = root + TruncSeries(var, cap, [_ZERO, Fraction(1, 2)]) - 1
    return 2 * _compose_into(series_log1p(cap, var="_t"), inner)


def _compose_into(outer: TruncSeries, inner):
    """Horner composition of ``outer`` with ``inner`` (constant term checked)."""
    if isinstance(inner, TruncSeries):
        if inner.constant_term() != 0:
            raise CompositionError("inner series must have zero constant term")
        cap = min(outer.cap, inner.cap)
        acc = TruncSeries.zero(inner.var, cap)
        inner_t = inner.truncate(cap)
        for c in reversed(outer.coeffs[: cap + 1]):
            acc = acc * inner_t + c
        return acc
    if isinstance(inner, BiSeries):
        if inner.get(0, 0) != 0:
            raise CompositionError("inner bi-series must have zero constant term")
        if outer.cap < inner.zcap + inner.hcap:
            raise CompositionError(
                "outer cap too small for a bi-series substitution "
                f"(need >= {inner.zcap + inner.hcap})"
            )
        acc = BiSeries.zero(inner.zcap, inner.hcap)
        for c in reversed(outer.coeffs):
            acc = acc * inner
            if c:
                acc = acc + BiSeries.constant(inner.zcap, inner.hcap, c)
        return acc
    raise TypeError("inner must be TruncSeries or BiSeries")


def series_compose(outer: TruncSeries, inner):
    """Formal composition outer(inner); inner must have zero constant term."""
    return _compose_into(outer, inner)


# ---------------------------------------------------------------------------
# Doubly truncated series in (z, h)
# ---------------------------------------------------------------------------


class BiSeries:
    """Rational-coefficient series truncated at (zcap, hcap).

    ``coeff[zdeg][hdeg]`` carries the coefficient of z**zdeg * h**hdeg.  The
    second variable is called h throughout but may carry a reparametrized
    expansion variable after substitution.
    """

    __slots__ = ("zcap", "hcap", "rows")

    def __init__(self, zcap: int, hcap: int, rows=None):
        if zcap < 0 or hcap < 0:
            raise ValueError("caps must be >= 0")
        self.zcap = zcap
        self.hcap = hcap
        grid = []
        rows = rows or []
        for zd in range(zcap + 1):
            src = rows[zd] if zd < len(rows) else ()
            row = [_frac(c) for c in src[: hcap + 1]]
            row += [_ZERO] * (hcap + 1 - len(row))
            grid.append(tuple(row))
        self.rows = tuple(grid)

    @classmethod
    def zero(cls, zcap: int, hcap: int) -> "BiSeries":
        return cls(zcap, hcap)

    @classmethod
    def constant(cls, zcap: int, hcap: int, value) -> "BiSeries":
        return cls(zcap, hcap, [[value]])

    def get(self, zdeg: int, hdeg: int) -> Fraction:
        if zdeg > self.zcap or hdeg > self.hcap:
            raise IndexError("coefficient beyond caps")
        return self.rows[zdeg][hdeg]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BiSeries)
            and self.zcap == other.zcap
            and self.hcap == other.hcap
            and self.rows == other.rows
        )

    def __add__(self, other: "BiSeries") -> "BiSeries":
        zc = min(self.zcap, other.zcap)
        hc = min(self.hcap, other.hcap)
        return BiSeries(
            zc,
            hc,
            [
                [self.rows[zd][hd] + other.rows[zd][hd] for hd in range(hc + 1)]
                for zd in range(zc + 1)
            ],
        )

    def __neg__(self) -> "BiSeries":
        return BiSeries(
            self.zcap, self.hcap, [[-c for c in row] for row in self.rows]
        )

    def __sub__(self, other: "BiSeries") -> "BiSeries":
        return self + (-other)

    def __mul__(self, other) -> "BiSeries":
        if isinstance(other, (int, Fraction)):
            o = _frac(other)
            return BiSeries(
                self.zcap, self.hcap, [[c * o for c in row] for row in self.rows]
            )
        zc = min(self.zcap, other.zcap)
        hc = min(self.hcap, other.hcap)
        out = [[_ZERO] * (hc + 1) for _ in range(zc + 1)]
        for zd1 in range(zc + 1):
            row1 = self.rows[zd1]
            for hd1 in range(hc + 1):
                a = row1[hd1]
                if a == 0:
                    continue
                for zd2 in range(zc + 1 - zd1):
                    row2 = other.rows[zd2]
                    orow = out[zd1 + zd2]
                    for hd2 in range(hc + 1 - hd1):
                        b = row2[hd2]
                        if b:
                            orow[hd1 + hd2] += a * b
        return BiSeries(zc, hc, out)

    __rmul__ = __mul__

    def add_term(self, zseries: TruncSeries, hseries: TruncSeries, scale=1) -> "BiSeries":
        """Accumulate scale * zseries(z) * hseries(h) into a copy of self."""
        s = _frac(scale)
        zc, hc = self.zcap, self.hcap
        out = [list(row) for row in self.rows]
        for zd in range(min(zc, zseries.cap) + 1):
            a = zseries.coeffs[zd]
            if a == 0:
                continue
            fa = a * s
            orow = out[zd]
            for hd in range(min(hc, hseries.cap) + 1):
                b = hseries.coeffs[hd]
                if b:
                    orow[hd] += fa * b
        return BiSeries(zc, hc, out)

    def substitute_h(self, new_h: TruncSeries) -> "BiSeries":
        """Substitute the h variable by a series with zero constant term.

        Each z-row is composed independently, so a row that is only valid up
        to some h-order stays valid to the same order after substitution
        (the substitution series has valuation 1).
        """
        if new_h.constant_term() != 0:
            raise CompositionError("substitution series must have zero constant term")
        if new_h.valuation() < 1:
            raise CompositionError("substitution series must have valuation >= 1")
        hc = min(self.hcap, new_h.cap)
        rows = []
        for zd in range(self.zcap + 1):
            outer = TruncSeries("_o", hc, self.rows[zd][: hc + 1])
            rows.append(list(_compose_into(outer, new_h.truncate(hc)).coeffs))
        return BiSeries(self.zcap, hc, rows)

    def odd_z_rows_zero(self) -> bool:
        return all(
            all(c == 0 for c in self.rows[zd]) for zd in range(1, self.zcap + 1, 2)
        )

    def h_row(self, zdeg: int) -> TruncSeries:
        return TruncSeries("h", self.hcap, self.rows[zdeg])


# ---------------------------------------------------------------------------
# Rational functions in z over Q
# ---------------------------------------------------------------------------


class RationalFn:
    """Ratio of two QPoly; denominator normalized to constant term 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: QPoly, den: QPoly, reduce: bool = True):
        if den.is_zero():
            raise InvalidRationalFunctionError("zero denominator")
        if reduce:
            g = poly_gcd(num, den)
            if not g.is_zero() and g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
        c0 = den.constant_term()
        if c0 == 0:
            raise InvalidRationalFunctionError(
                "denominator has zero constant term after reduction"
            )
        if c0 != 1:
            inv = 1 / c0
            num = num * inv
            den = den * inv
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: QPoly) -> "RationalFn":
        return cls(p, QPoly.one(), reduce=False)

    @classmethod
    def zero(cls) -> "RationalFn":
        return cls(QPoly.zero(), QPoly.one(), reduce=False)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __add__(self, other: "RationalFn") -> "RationalFn":
        return RationalFn(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> "RationalFn":
        return RationalFn(-self.num, self.den, reduce=False)

    def __sub__(self, other: "RationalFn") -> "RationalFn":
        return self + (-other)

    def __mul__(self, other) -> "RationalFn":
        if isinstance(other, (int, Fraction)):
            return RationalFn(self.num * other, self.den, reduce=False)
        if isinstance(other, QPoly):
            return RationalFn(self.num * other, self.den)
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def derivative(self) -> "RationalFn":
        """Quotient-rule derivative, reduced."""
        return RationalFn(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def reduce(self) -> "RationalFn":
        return RationalFn(self.num, self.den)

    def series(self, cap: int, var: str = "z") -> TruncSeries:
        """Power-series expansion to ``cap`` (denominator is a unit)."""
        den_series = TruncSeries(var, cap, self.den.coeffs).invert()
        return TruncSeries(var, cap, self.num.coeffs) * den_series

    def numerator_against(self, den_power: QPoly) -> QPoly:
        """Return self * den_power as a QPoly; raises if not polynomial."""
        prod_num = self.num * den_power
        return prod_num.exact_div(self.den)

    def __repr__(self) -> str:
        return f"({self.num!r}) / ({self.den!r})"


def ratfn_reduce(f: RationalFn) -> RationalFn:
    """Remove the polynomial GCD and renormalize the denominator."""
    return f.reduce()


def ratfn_derivative(f: RationalFn) -> RationalFn:
    """Quotient-rule derivative followed by reduction."""
    return f.derivative()


def binomial(n: int, k: int) -> int:
    return comb(n, k)


def laurent_to_hseries(p: LaurentPoly, cap: int, var: str = "h") -> TruncSeries:
    """Substitute the Laurent variable by 1 + h, truncated at ``cap``.

    Negative powers expand through the binomial series.  For integer Laurent
    input the coefficients are integers; this is asserted.
    """
    out = TruncSeries.zero(var, cap)
    for e, c in sorted(p.terms.items()):
        out = out + c * series_pow1p(e, cap, var=var)
    for coeff in out.coeffs:
        if coeff.denominator != 1:
            raise ExactAlgError("h-expansion of an integer Laurent lost integrality")
    return out
