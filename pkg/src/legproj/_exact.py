"""Small exact-arithmetic helpers shared by the polynomial modules."""
from __future__ import annotations

from fractions import Fraction
from math import prod


def factorial_ratio(top: int, bottom: int) -> Fraction:
    """Return ``top! / bottom!`` as a product over the index gap.

    Neither factorial is formed; only the ``|top - bottom|`` factors between
    them are multiplied.
    """
    if top < 0 or bottom < 0:
        raise ValueError(f"factorial of negative integer ({top}, {bottom})")
    if top >= bottom:
        return Fraction(prod(range(bottom + 1, top + 1)))
    return Fraction(1, prod(range(top + 1, bottom + 1)))


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    num, _, den = text.strip().partition("/")
    return Fraction(int(num), int(den) if den else 1)
