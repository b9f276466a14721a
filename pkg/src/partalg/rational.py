"""Exact-rational string helpers shared across the package.

Rationals are always serialized as "p/q" in lowest terms, denominator
included even when it is 1, and never as floats.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["frac_str", "parse_frac"]


def frac_str(value) -> str:
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


def parse_frac(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"malformed rational {text!r}") from None
