"""Exact rational scalars: the coefficient field of the whole engine.

Every coefficient that the engine stores or reports lives in Q.  We use
:class:`fractions.Fraction`, which already guarantees the canonical form we
rely on for equality testing: arbitrary-precision integers, reduced terms and
a positive denominator after every operation.
"""

from __future__ import annotations

import re
from fractions import Fraction

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def rat(numerator: int, denominator: int = 1) -> Rational:
    """Build an exact rational; denominator must be nonzero."""
    return Fraction(numerator, denominator)


def parse_rational(text: str) -> Rational:
    """Parse ``"num"`` or ``"num/den"`` into an exact rational.

    Decimal notation is rejected on purpose: a decimal literal would silently
    enter the exact layer as a binary float.  Callers get a hint to rewrite
    ``0.25`` as ``1/4``.
    """
    cleaned = text.strip()
    if not _RATIONAL_RE.match(cleaned):
        if re.match(r"^[+-]?\d*\.\d+$", cleaned):
            raise ValueError(
                f"decimal input {text!r} not accepted; use an exact fraction "
                f"such as 1/4"
            )
        raise ValueError(f"cannot parse {text!r} as an exact rational")
    return Fraction(cleaned)


def format_rational(value: Rational) -> str:
    """Render ``p/q`` (or just ``p`` for integers)."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def binomial(r: Rational | int, k: int) -> Rational:
    """Generalized binomial coefficient r(r-1)...(r-k+1)/k! for rational r."""
    if k < 0:
        raise ValueError("lower index of a binomial must be nonnegative")
    r = Fraction(r)
    result = ONE
    for i in range(k):
        result *= (r - i) / (i + 1)
    return result
