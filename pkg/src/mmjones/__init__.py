"""Exact colored Jones polynomials, loop-line expansions and torus-knot lines."""

__version__ = "0.1.0"
