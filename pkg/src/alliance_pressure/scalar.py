"""Exact rational scalars and their text form.

Values are ``gmpy2.mpq``: exact like :class:`fractions.Fraction` (they
compare and hash equal to it) but an order of magnitude faster, which the
grid sweeps need.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Union

from gmpy2 import mpq

Scalar = type(mpq(0))
ScalarLike = Union[int, str, Fraction, float, "mpq"]


def to_scalar(value: ScalarLike) -> "mpq":
    """Coerce ``value`` to an exact rational.

    Strings may be integers, decimals (``"0.45"``) or fractions (``"39/85"``).
    Floats are read through their shortest decimal repr, so ``0.45`` becomes
    ``9/20`` rather than the nearest binary double.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Rational)):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite number: {value!r}")
        return to_scalar(Fraction(repr(value)))
    if isinstance(value, str):
        try:
            return to_scalar(Fraction(value.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def fmt(value) -> str:
    """Render as ``"p/q"`` (or ``"p"`` for integers); re-parses exactly."""
    return str(to_scalar(value))
