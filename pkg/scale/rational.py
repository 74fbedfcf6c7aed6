"""
scale/rational.py
Exact points of [0,1]: parsing, formatting, truncated arithmetic and grids.
"""

from fractions import Fraction
from typing import Union

Number = Union[int, str, Fraction]


def parse_rational(value: Number) -> Fraction:
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not a rational: {value!r}")
    raise ValueError(f"not a rational: {value!r} (use 'p/q' strings for exact values)")


def unit(value: Number) -> Fraction:
    """Parse and require 0 <= value <= 1."""
    q = parse_rational(value)
    if not 0 <= q <= 1:
        raise ValueError(f"{fmt(q)} is outside [0,1]")
    return q


def fmt(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def dot_plus(a: Fraction, b: Fraction) -> Fraction:
    return min(a + b, Fraction(1))


def dot_minus(a: Fraction, b: Fraction) -> Fraction:
    return max(a - b, Fraction(0))


def dyadic_grid(depth: int) -> tuple:
    d = 1 << depth
    return tuple(Fraction(k, d) for k in range(d + 1))


def uniform_grid(n: int) -> tuple:
    return tuple(Fraction(k, n) for k in range(n + 1))


def random_unit(rng, denominator: int = 16) -> Fraction:
    return Fraction(int(rng.integers(0, denominator + 1)), denominator)
