"""Exact rational scalars and their wire format.

Every coefficient in this package is a `fractions.Fraction` (already stored
in lowest terms with a positive denominator).  Serialized interfaces carry
rationals as "num/den" strings, e.g. "-3/35"; bare integers are accepted on
input and always rendered as "n/1" on output.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import ConfigError

Rat = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(value) -> Fraction:
    """Coerce an int, string or Fraction to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise ConfigError(f"cannot interpret {value!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse "num/den" or a bare integer string."""
    body = text.strip()
    try:
        if "/" in body:
            num, den = body.split("/", 1)
            return Fraction(int(num.strip()), int(den.strip()))
        return Fraction(int(body))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad rational literal {text!r}: {exc}") from exc


def format_rational(q) -> str:
    """Render a rational as "num/den" (integers become "n/1")."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def sqrt_rational(q: Fraction):
    """Exact square root of a perfect-square rational, else None."""
    if q < 0:
        return None
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None
