"""Exact number handling: rational literals and the infinity sentinel."""

from __future__ import annotations

import re
from fractions import Fraction

__all__ = ["INF", "Infinity", "parse_number", "format_number", "is_inf", "as_fraction"]

_NUMBER_RE = re.compile(r"^[+-]?(\d+(\.\d+)?|\d+/\d+)$")


class Infinity:
    """The value of a partial distance on pairs with no common ancestor.

    A singleton that compares greater than every rational. It never takes
    part in arithmetic.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (Infinity, ())

    def __hash__(self):
        return hash("arboreal.INF")

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INF = Infinity()


def is_inf(value) -> bool:
    return value is INF


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and literal strings to a Fraction (never floats)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        return parse_number(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}: {value!r}")


def parse_number(text: str) -> Fraction:
    """Parse ``3``, ``1.5`` or ``3/2`` into an exact Fraction.

    Raises ValueError on anything else, including exponents and zero
    denominators.
    """
    s = text.strip()
    if not _NUMBER_RE.match(s):
        raise ValueError(f"malformed number {text!r}")
    try:
        return Fraction(s)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None


def _is_power_of_ten(n: int) -> int | None:
    k = 0
    while n % 10 == 0:
        n //= 10
        k += 1
    return k if n == 1 else None


def format_number(value) -> str:
    """Lowest-terms text for a rational; decimal when the denominator is 10**k."""
    if value is INF:
        return "inf"
    q = as_fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    k = _is_power_of_ten(q.denominator)
    if k is not None:
        sign = "-" if q < 0 else ""
        whole, frac = divmod(abs(q.numerator), q.denominator)
        return f"{sign}{whole}.{str(frac).rjust(k, '0')}"
    return f"{q.numerator}/{q.denominator}"
