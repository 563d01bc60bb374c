"""Scalar handling shared by the exact (rational) and float arithmetic modes.

Exact mode keeps every quantity a ``fractions.Fraction`` so optima, gaps and
invariance checks can be asserted with zero tolerance.  Float mode runs the
same algorithms on ``float`` values.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Scalar = Union[int, float, Fraction]

INF = float("inf")
NEG_INF = float("-inf")


def parse_scalar(value) -> Scalar:
    """Parse a JSON-level number.

    Integers and "p/q" strings become exact rationals; floats stay floats.
    """
    if isinstance(value, bool):
        raise ValueError(f"not a number: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {value!r}") from exc
    raise ValueError(f"not a number: {value!r}")


def is_exact(value) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def coerce(value: Scalar, exact: bool) -> Scalar:
    """Bring a scalar into the requested arithmetic mode."""
    if exact:
        return Fraction(value)
    return float(value)


def scalar_to_json(value: Scalar):
    """Serialize a scalar so that exact values survive a JSON round trip."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return value
    return float(value)
