"""Scalar arithmetic in two modes.

Exact mode uses `int` / `fractions.Fraction` values and all comparisons are
exact.  Floating mode uses binary64 with a single absolute tolerance per run;
two floats are "equal" when they differ by at most that tolerance.  A value
participates in floating-mode comparison as soon as one operand is a float.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Scalar = Union[int, Fraction, float]

DEFAULT_TOLERANCE = 1e-9

_tolerance = DEFAULT_TOLERANCE


def set_tolerance(eps: float) -> None:
    """Set the run-wide absolute tolerance used for float comparisons."""
    global _tolerance
    if not eps > 0:
        raise ValueError("tolerance must be positive, got %r" % (eps,))
    _tolerance = float(eps)


def tolerance() -> float:
    return _tolerance


def is_exact(*values: Scalar) -> bool:
    """True when every value is an int or Fraction."""
    return all(isinstance(v, (int, Fraction)) and not isinstance(v, bool)
               for v in values)


def eq(a: Scalar, b: Scalar) -> bool:
    if is_exact(a, b):
        return a == b
    return abs(a - b) <= _tolerance


def le(a: Scalar, b: Scalar) -> bool:
    if is_exact(a, b):
        return a <= b
    return a <= b + _tolerance


def lt(a: Scalar, b: Scalar) -> bool:
    """Strict comparison; in floating mode strict means 'less by a margin'."""
    if is_exact(a, b):
        return a < b
    return a < b - _tolerance


def ge(a: Scalar, b: Scalar) -> bool:
    return le(b, a)


def gt(a: Scalar, b: Scalar) -> bool:
    return lt(b, a)


def sign(a: Scalar) -> int:
    if not is_exact(a):
        if abs(a) <= _tolerance:
            return 0
        return 1 if a > 0 else -1
    if a > 0:
        return 1
    if a < 0:
        return -1
    return 0


def eq_rel(a: Scalar, b: Scalar, rel: float = 1e-9) -> bool:
    """Relative comparison used for ratios of floating values."""
    if is_exact(a, b):
        return a == b
    scale = max(1.0, abs(float(a)), abs(float(b)))
    return abs(a - b) <= rel * scale


def div(a: Scalar, b: Scalar) -> Scalar:
    """Division that stays exact for exact operands (int/int included)."""
    if is_exact(a, b):
        return Fraction(a) / Fraction(b)
    return a / b


def as_float(a: Scalar) -> float:
    return float(a)


def parse_scalar(value) -> Scalar:
    """Parse a JSON-level number.

    ints stay ints, floats stay floats, strings are exact rationals and may be
    given as "p/q" or as a decimal literal like "0.25".
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError("cannot parse scalar %r" % (value,)) from exc
    raise TypeError("cannot parse scalar of type %s" % type(value).__name__)


def format_scalar(value: Scalar):
    """Inverse of parse_scalar: exact values serialize losslessly."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value)
        return "%d/%d" % (value.numerator, value.denominator)
    return value
