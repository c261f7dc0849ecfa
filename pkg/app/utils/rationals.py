"""
Exact rational helpers.

Conversion to Fraction and the canonical "num/den" text form.
"""

from fractions import Fraction
from typing import Any

from app.utils.exceptions import InvalidParameterError


def to_fraction(value: Any) -> Fraction:
    """
    Convert a value to an exact rational.

    Floats are converted through their shortest decimal representation so
    that 0.5 becomes 1/2 rather than a binary expansion.

    Args:
        value: int, Fraction, float, or a "num/den" / decimal string

    Returns:
        Fraction: Exact value

    Raises:
        InvalidParameterError: If the value cannot be read as a rational
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidParameterError(f"Not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        return parse_rational(value)
    raise InvalidParameterError(f"Not a rational: {value!r}")


def parse_rational(text: str) -> Fraction:
    """
    Parse "num/den", an integer or a decimal string.

    Args:
        text: Rational in text form

    Returns:
        Fraction: Parsed value

    Raises:
        InvalidParameterError: On malformed text or zero denominator
    """
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise InvalidParameterError(f"Malformed rational: {text!r}") from e


def format_rational(value: Fraction | int) -> str:
    """Canonical text form: "n" for integers, "n/d" otherwise."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def midpoint(a: Fraction, b: Fraction) -> Fraction:
    return (a + b) / 2
