"""Braid words, the knot catalog, and exact Alexander-Conway polynomials.

The Conway polynomial of a braid closure is computed through the reduced
Burau representation: det(Burau(b) - Id) over Z[t, t^-1], divided by
1 + t + ... + t^(s-1), with the unit ambiguity resolved by forcing symmetry
under t -> 1/t and value 1 at t = 1.  The result is rewritten as a
polynomial in z via z^2 = t - 2 + 1/t.

Torus knots additionally get a closed-form Conway polynomial from the
quotient of quantum integers, computed by exact Laurent division in
x = t^(1/2).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd
from typing import Optional, Sequence

from .exactalg import InexactDivisionError, LaurentPoly, QPoly


class KnotError(Exception):
    """Base class for presentation/catalog failures."""


class NotAKnotError(KnotError):
    """The braid closure has more than one component."""


class PresentationError(KnotError):
    """The Burau determinant could not be unit-normalized as a knot polynomial."""


class InvalidTorusParametersError(KnotError):
    """Torus parameters must be coprime and both of magnitude >= 2."""


class CatalogError(KnotError):
    """Catalog schema violation or a failed validation gate."""


# ---------------------------------------------------------------------------
# Braid words
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BraidWord:
    """A word in the braid group B_strands.

    Letter k (nonzero) means the generator with index |k| and sign sign(k);
    generators are 1-based, so 1 <= |k| <= strands - 1.
    """

    strands: int
    letters: tuple = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("strands must be >= 1")
        letters = tuple(int(k) for k in self.letters)
        object.__setattr__(self, "letters", letters)
        for k in letters:
            if k == 0 or abs(k) > self.strands - 1:
                raise ValueError(f"letter {k} out of range for {self.strands} strands")

    def writhe(self) -> int:
        return sum(1 if k > 0 else -1 for k in self.letters)

    def permutation(self) -> list:
        """Image of each strand position under the braid (0-based)."""
        perm = list(range(self.strands))
        for k in self.letters:
            i = abs(k) - 1
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
        return perm

    def closure_component_count(self) -> int:
        perm = self.permutation()
        seen = [False] * self.strands
        cycles = 0
        for start in range(self.strands):
            if seen[start]:
                continue
            cycles += 1
            j = start
            while not seen[j]:
                seen[j] = True
                j = perm[j]
        return cycles

    def is_knot(self) -> bool:
        return self.closure_component_count() == 1

    def mirror(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-k for k in self.letters))

    def reversed_word(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(reversed(self.letters)))

    def stabilized(self, sign: int = 1) -> "BraidWord":
        """Markov stabilization: one more strand and a final +/-(strands) letter."""
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        return BraidWord(self.strands + 1, self.letters + (sign * self.strands,))

    def conjugated(self, letter: int) -> "BraidWord":
        return BraidWord(self.strands, (letter,) + self.letters + (-letter,))


def closure_component_count(b: BraidWord) -> int:
    return b.closure_component_count()


def writhe(b: BraidWord) -> int:
    return b.writhe()


# ---------------------------------------------------------------------------
# Reduced Burau representation and the Conway polynomial
# ---------------------------------------------------------------------------


def _burau_generator(strands: int, letter: int) -> list:
    """Matrix of the reduced Burau image of one braid generator.

    Acts on column vectors of dimension strands - 1 over Z[t, t^-1]; columns
    hold images of basis vectors.
    """
    n = strands - 1
    t = LaurentPoly.monomial("t", 1)
    tinv = LaurentPoly.monomial("t", -1)
    one = LaurentPoly.one("t")
    zero = LaurentPoly.zero("t")
    mat = [[one if r == c else zero for c in range(n)] for r in range(n)]
    i = abs(letter)  # 1-based generator index; acts on row i (1-based)
    r = i - 1
    if letter > 0:
        mat[r][r] = -t
        if r - 1 >= 0:
            mat[r][r - 1] = t
        if r + 1 < n:
            mat[r][r + 1] = one
    else:
        mat[r][r] = -tinv
        if r - 1 >= 0:
            mat[r][r - 1] = one
        if r + 1 < n:
            mat[r][r + 1] = tinv
    return mat


def _mat_mul(a, b):
    n = len(a)
    zero = LaurentPoly.zero("t")
    out = [[zero for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for k in range(n):
            aik = a[i][k]
            if aik.is_zero():
                continue
            for j in range(n):
                bkj = b[k][j]
                if not bkj.is_zero():
                    out[i][j] = out[i][j] + aik * bkj
    return out


def reduced_burau(b: BraidWord):
    """Reduced Burau matrix of the whole word (identity for empty words)."""
    n = b.strands - 1
    one = LaurentPoly.one("t")
    zero = LaurentPoly.zero("t")
    mat = [[one if r == c else zero for c in range(n)] for r in range(n)]
    for k in b.letters:
        mat = _mat_mul(_burau_generator(b.strands, k), mat)
    return mat


def _determinant(mat) -> LaurentPoly:
    n = len(mat)
    if n == 0:
        return LaurentPoly.one("t")
    if n == 1:
        return mat[0][0]
    det = LaurentPoly.zero("t")
    for j in range(n):
        c = mat[0][j]
        if c.is_zero():
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in mat[1:]]
        term = c * _determinant(minor)
        det = det + term if j % 2 == 0 else det - term
    return det


def symmetric_laurent_to_z2(p: LaurentPoly) -> QPoly:
    """Rewrite a t<->1/t symmetric Laurent polynomial as a polynomial in z^2.

    Uses z^2 = t - 2 + 1/t; every symmetric polynomial is an integer
    combination of t^j + t^-j, each of which is a polynomial in w = t + 1/t.
    """
    if not p.is_symmetric():
        raise PresentationError("polynomial is not symmetric under t -> 1/t")
    if p.is_zero():
        return QPoly.zero()
    top = p.max_exp()
    # b_j(w) = t^j + t^-j as polynomials in w
    b = [QPoly([2]), QPoly([0, 1])]
    while len(b) <= top:
        b.append(QPoly([0, 1]) * b[-1] - b[-2])
    in_w = QPoly([p.coeff(0)])
    for j in range(1, top + 1):
        c = p.coeff(j)
        if c:
            in_w = in_w + c * b[j]
    result = in_w.compose(QPoly([2, 0, 1]))  # w = z^2 + 2
    if not result.only_even_powers():
        raise PresentationError("z-conversion produced odd powers")
    return result


def conway_poly(b: BraidWord) -> QPoly:
    """Conway-normalized Alexander polynomial of the closure of ``b``.

    The closure must be a knot.  The result is a polynomial in z^2 with
    integer coefficients and constant term 1.
    """
    if not b.is_knot():
        raise NotAKnotError(
            f"closure has {b.closure_component_count()} components, expected 1"
        )
    mat = reduced_burau(b)
    n = b.strands - 1
    one = LaurentPoly.one("t")
    delta = [[mat[i][j] - (one if i == j else LaurentPoly.zero("t")) for j in range(n)] for i in range(n)]
    det = _determinant(delta)
    cyclotomic = LaurentPoly("t", {k: 1 for k in range(b.strands)})
    try:
        quot = det.exact_div(cyclotomic)
    except InexactDivisionError as exc:
        raise PresentationError(f"Burau determinant not divisible: {exc}") from exc
    if quot.is_zero():
        raise PresentationError("vanishing Alexander determinant for a knot closure")
    lo, hi = quot.min_exp(), quot.max_exp()
    if (lo + hi) % 2 != 0:
        raise PresentationError("Alexander polynomial has odd exponent span")
    centered = quot.shift(-(lo + hi) // 2)
    if not centered.is_symmetric():
        raise PresentationError("Alexander polynomial failed to symmetrize")
    at_one = centered.evaluate_at_one()
    if at_one == -1:
        centered = -centered
    elif at_one != 1:
        raise PresentationError(f"Alexander polynomial evaluates to {at_one} at t=1")
    result = symmetric_laurent_to_z2(centered)
    if not result.has_integer_coeffs() or result.constant_term() != 1:
        raise PresentationError("Conway normalization failed")
    return result


# ---------------------------------------------------------------------------
# Torus knots
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TorusParams:
    """Parameters (p, q) of a torus knot; coprime, both of magnitude >= 2."""

    p: int
    q: int

    def __post_init__(self):
        if abs(self.p) < 2 or abs(self.q) < 2:
            raise InvalidTorusParametersError("|p| and |q| must be >= 2")
        if gcd(self.p, self.q) != 1:
            raise InvalidTorusParametersError(f"gcd({self.p},{self.q}) != 1")

    def braid(self) -> BraidWord:
        """The standard (sigma_1 ... sigma_(p-1))^q presentation (positive p, q)."""
        p, q = abs(self.p), abs(self.q)
        word = tuple(range(1, p)) * q
        if self.p * self.q < 0:
            word = tuple(-k for k in word)
        return BraidWord(p, word)


def conway_torus(t: TorusParams) -> QPoly:
    """Closed-form Conway polynomial of the (p, q) torus knot.

    Quotient of x-quantum integers in x = t^(1/2):
    (x^pq - x^-pq)(x - x^-1) / ((x^p - x^-p)(x^q - x^-q)), then z^2 = x^2 - 2 + x^-2.
    """
    p, q = abs(t.p), abs(t.q)

    def qint(k: int) -> LaurentPoly:
        x = LaurentPoly.monomial("x", 1)
        return x ** k - x ** -k

    num = qint(p * q) * qint(1)
    den = qint(p) * qint(q)
    quot = num.exact_div(den)
    if not quot.exponents_divisible_by(2):
        raise PresentationError("torus quotient has odd x-powers")
    in_t = quot.compress_exponents(2, "t")
    result = symmetric_laurent_to_z2(in_t)
    if not result.has_integer_coeffs() or result.constant_term() != 1:
        raise PresentationError("torus Conway normalization failed")
    return result


# ---------------------------------------------------------------------------
# Catalog
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KnotRecord:
    name: str
    braid: BraidWord
    amphicheiral: bool = False
    expected_conway: Optional[QPoly] = None
    conway: QPoly = field(init=False)

    def __post_init__(self):
        if not self.braid.is_knot():
            raise NotAKnotError(
                f"{self.name}: braid closes to "
                f"{self.braid.closure_component_count()} components"
            )
        computed = conway_poly(self.braid)
        if self.expected_conway is not None and computed != self.expected_conway:
            raise CatalogError(
                f"{self.name}: computed Conway polynomial {computed!r} does not "
                f"match expected {self.expected_conway!r}"
            )
        object.__setattr__(self, "conway", computed)


# Default braid words.  These are presentation data, not ground truth: the
# Conway gate above and the golden expansion tables in the verification
# suites pin down both the knot type and its chirality.
DEFAULT_CATALOG_ENTRIES = [
    {"name": "unknot", "strands": 1, "braid": [], "amphicheiral": True, "conway": [1]},
    {"name": "3_1", "strands": 2, "braid": [1, 1, 1], "amphicheiral": False, "conway": [1, 1]},
    {"name": "4_1", "strands": 3, "braid": [1, -2, 1, -2], "amphicheiral": True, "conway": [1, -1]},
    {"name": "5_2", "strands": 3, "braid": [-1, -1, -1, -2, 1, -2], "amphicheiral": False, "conway": [1, 2]},
    {"name": "6_1", "strands": 4, "braid": [-1, -1, -2, 1, 3, -2, 3], "amphicheiral": False, "conway": [1, -2]},
    {"name": "8_3", "strands": 5, "braid": [1, 1, 2, -1, -3, 2, -3, -4, 3, -4], "amphicheiral": True, "conway": [1, -4]},
]


def _record_from_dict(obj: dict) -> KnotRecord:
    try:
        name = obj["name"]
        strands = obj["strands"]
        letters = obj["braid"]
    except KeyError as exc:
        raise CatalogError(f"catalog record missing field {exc}") from exc
    if not isinstance(name, str):
        raise CatalogError("catalog 'name' must be a string")
    if not isinstance(strands, int) or isinstance(strands, bool):
        raise CatalogError(f"{name}: 'strands' must be an integer")
    if not isinstance(letters, list) or any(
        not isinstance(k, int) or isinstance(k, bool) for k in letters
    ):
        raise CatalogError(f"{name}: 'braid' must be a list of integers")
    amphicheiral = obj.get("amphicheiral", False)
    if not isinstance(amphicheiral, bool):
        raise CatalogError(f"{name}: 'amphicheiral' must be a boolean")
    expected = None
    if "conway" in obj and obj["conway"] is not None:
        coeffs = obj["conway"]
        if not isinstance(coeffs, list) or any(
            not isinstance(c, int) or isinstance(c, bool) for c in coeffs
        ):
            raise CatalogError(f"{name}: 'conway' must be a list of integers")
        expected = QPoly.from_z2_coeffs(coeffs)
    try:
        braid = BraidWord(strands, tuple(letters))
    except ValueError as exc:
        raise CatalogError(f"{name}: {exc}") from exc
    return KnotRecord(name, braid, amphicheiral, expected)


def load_catalog(document) -> list:
    """Load and validate a knot catalog.

    ``document`` may be a JSON string, a parsed list of record dicts, or a
    filesystem path.  Every record is validated: well-formed braid,
    single-component closure, and a Conway polynomial match whenever an
    expected polynomial is supplied.
    """
    if isinstance(document, (list, tuple)):
        data = list(document)
    else:
        text = str(document)
        if "[" not in text:
            with open(text, "r", encoding="utf-8") as fh:
                text = fh.read()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CatalogError(f"catalog is not valid JSON: {exc}") from exc
    if not isinstance(data, list):
        raise CatalogError("catalog must be a top-level list of records")
    records = []
    seen = set()
    for obj in data:
        if not isinstance(obj, dict):
            raise CatalogError("catalog records must be objects")
        rec = _record_from_dict(obj)
        if rec.name in seen:
            raise CatalogError(f"duplicate catalog entry {rec.name}")
        seen.add(rec.name)
        records.append(rec)
    return records


def default_catalog() -> list:
    return load_catalog(DEFAULT_CATALOG_ENTRIES)


def catalog_lookup(records: Sequence[KnotRecord], name: str) -> KnotRecord:
    for rec in records:
        if rec.name == name:
            return rec
    raise CatalogError(f"unknown knot {name!r}")
