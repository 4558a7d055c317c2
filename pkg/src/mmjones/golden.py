"""Embedded golden data for the verification suites.

Tables give the exact line coefficients d^(n)_m for the four catalog knots
(rows indexed by line n, columns by m starting at 0) and the classical
polynomial lists for small torus knots.  All values are exact integers and
byte-identical across runs.

Three entries of the classical source listings fail their own internal
cross-checks (the printed approximants and the bottom-line identity pin
every low row); the values here are the internally consistent ones,
re-derived by this package's two independent pipelines.  The superseded
printed variants are kept alongside for reference:

* knot 6_1, line 3, m = 5: printed -7720, consistent value -77020 (forced
  by the printed degree-10 and degree-12 approximant coefficients);
* knot 8_3, line 0, m >= 3: printed 32, 64, 128, 256; the bottom line is
  the expansion of 1/(1 - 4 z^2), so the row is 4^m;
* the 8_3 degree-6 approximant coefficient: printed +928, consistent value
  -928 (forced by the m = 4..6 entries of the printed line-4 row).

One further listing carries an odd power of z that the even-parity theorem
excludes (the (2,3) torus knot's second line numerator); the frozen value
below is the computed one, which matches the printed z^0 and z^2 terms.
"""

from __future__ import annotations

# ---------------------------------------------------------------------------
# Line tables: knot -> (parameter tag, {line n: [d^(n)_0, d^(n)_1, ...]})
# ---------------------------------------------------------------------------

LINE_TABLES = {
    "5_2": (
        "h",
        {
            0: [1, -2, 4, -8, 16, -32, 64],
            1: [0, -6, 31, -114, 360, -1040, 2832],
            2: [2, -27, 226, -1286, 5843, -22974, 81684],
            3: [4, -139, 1750, -14100, 86613, -443388, 1991453],
            4: [19, -832, 14664, -158554, 1262646, -8145921, 45047755],
            5: [93, -5720, 133890, -1866899, 18679183, -148104718, 988048870],
        },
    ),
    "6_1": (
        "h",
        {
            0: [1, 2, 4, 8, 16, 32, 64],
            1: [0, 2, 11, 42, 136, 400, 1104],
            2: [-2, -19, -93, -340, -1037, -2754, -6428],
            3: [0, -35, -455, -3264, -17389, -77020, -300255],
            4: [15, 328, 2843, 14830, 50071, 74117, -399260],
            5: [13, 1226, 24996, 274355, 2107672, 12766200, 65058967],
        },
    ),
    "4_1": (
        "ht",
        {
            0: [1, 1, 1, 1, 1, 1, 1],
            2: [-1, -5, -14, -30, -55, -91, -140],
            4: [4, 48, 266, 996, 2926, 7280, 16044],
            6: [-35, -780, -7214, -41875, -180510, -631436, -1890680],
            8: [543, 19434, 270472, 2251006, 13395371, 62736271, 245214729],
        },
    ),
    "8_3": (
        "ht",
        {
            0: [1, 4, 16, 64, 256, 1024, 4096],
            2: [-4, -76, -821, -6868, -49504, -323456, -1970944],
            4: [60, 2746, 58210, 840696, 9594881, 93259044, 806300400],
        },
    ),
}

# Superseded printed variants, kept for reference and for the informational
# discrepancy report (knot, n, m) -> printed value.
PRINTED_VARIANTS = {
    ("6_1", 3, 5): -7720,
    ("8_3", 0, 3): 32,
    ("8_3", 0, 4): 64,
    ("8_3", 0, 5): 128,
    ("8_3", 0, 6): 256,
}

# Order budget needed to cover every tabulated row at 7 columns.
TABLE_BUDGET = {"5_2": 9, "6_1": 9, "4_1": 10, "8_3": 8}

# ---------------------------------------------------------------------------
# Torus knots: (p, q) -> Conway coefficients (of z^0, z^2, ...) and
# certified numerators P^(n) (coefficients of z^0, z^2, ...).
# ---------------------------------------------------------------------------

TORUS_CONWAY = {
    (2, 3): [1, 1],
    (2, 5): [1, 3, 1],
    (2, 7): [1, 6, 5, 1],
    (3, 5): [1, 8, 14, 7, 1],
}

TORUS_NUMERATORS = {
    (2, 3): {
        0: [1],
        1: [0, 2, 1],
        2: [1, -3, -1],
        3: [-3, 13, 0, -1],
    },
    (2, 5): {
        0: [1],
        1: [0, 10, 21, 12, 2],
        2: [3, -19, -24, 58, 145, 128, 56, 12, 1],
    },
    (2, 7): {
        0: [1],
        1: [0, 28, 126, 180, 110, 30, 3],
        2: [6, -66, -138, 1398, 7248, 15747, 19635, 15360, 7776, 2544, 519, 60, 3],
    },
    (3, 5): {
        0: [1],
        1: [0, 40, 314, 908, 1224, 846, 308, 56, 4],
    },
}

# The (2,3) second-line numerator as printed carries an odd power (z^3); the
# frozen value above is the double-computed one.  Kept for the report.
TORUS_PRINTED_ODDITY = ((2, 3), 2, "1 - 3 z^2 - z^3")

# ---------------------------------------------------------------------------
# Approximant heads: knot -> list of (line n, exponent, head coefficients)
# with head coefficients over z^0, z^2, ...  Exponents follow 2n+1 for the
# plain parameter and 3(n/2)+1 for the reparametrized tables.
# ---------------------------------------------------------------------------

APPROX_HEADS = {
    "5_2": [
        (1, 3, [0, -6, -5]),
        (2, 5, [2, -7, 36, 54, 23]),
        (3, 7, [4, -83, 140, -156, -467, -358, -103]),
    ],
    "6_1": [
        (1, 3, [0, 2, -1]),
        (2, 5, [-2, 1, 17, -10, 3]),
        (3, 7, [0, -35, 35, 166, -113, 50, -11]),
    ],
    "4_1": [
        (2, 4, [-1, -1]),
        (4, 7, [4, 20, 14, 2]),
        (6, 10, [-35, -430, -989, -635, -140, -11]),
    ],
    "8_3": [
        (2, 4, [-4, -12, 11, -4]),
        (4, 7, [60, 1066, 1482, -928, 513, -248, 80]),
    ],
}

# The 8_3 line-4 head z^6 coefficient appears as +928 in the printed source;
# the value above is forced by the printed line-4 row itself.
APPROX_PRINTED_VARIANTS = {("8_3", 4, 3): 928}
