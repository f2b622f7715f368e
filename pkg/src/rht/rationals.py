"""Exact rational scalars and their string form.

The coefficient field is the rationals throughout; `fractions.Fraction`
already guarantees the reduced form and positive denominator we need, so it
is used directly rather than wrapped.  This module only adds the string
round-trip ("p/q" or "p") used by every JSON format, and integer
normalization of positive rational vectors.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .errors import SchemaError


def parse_rational(text: str, path: str = "") -> Fraction:
    """Parse "p" or "p/q" into an exact Fraction.

    Floats are rejected: every scalar in this package is exact.
    """
    s = text.strip()
    if not s:
        raise SchemaError("empty rational literal", path)
    if any(c in s for c in ".eE") and not s.lstrip("+-").isdigit():
        raise SchemaError(f"not an exact rational: {text!r}", path)
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"not an exact rational: {text!r}", path) from exc


def format_rational(q: Fraction) -> str:
    """Inverse of parse_rational; integers print without a denominator."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def coprime_integer_vector(values: list[Fraction]) -> tuple[int, ...]:
    """Scale a vector of positive rationals to coprime positive integers.

    Multiplies by the lcm of denominators, then divides by the gcd of the
    resulting entries.  The empty vector maps to the empty tuple.
    """
    if not values:
        return ()
    if any(v <= 0 for v in values):
        raise ValueError("vector must be strictly positive")
    scale = lcm(*(v.denominator for v in values))
    ints = [int(v * scale) for v in values]
    g = gcd(*ints)
    return tuple(n // g for n in ints)
