from fractions import Fraction

import pytest

from minkarr import scalars
from minkarr.scalars import (div, eq, format_scalar, ge, gt, is_exact, le, lt,
                             parse_scalar, sign)


def test_parse_roundtrip():
    assert parse_scalar(3) == 3
    assert parse_scalar("2/3") == Fraction(2, 3)
    assert parse_scalar("0.25") == Fraction(1, 4)
    assert parse_scalar(1.5) == 1.5
    assert format_scalar(Fraction(2, 3)) == "2/3"
    assert format_scalar(Fraction(4, 2)) == 2
    assert format_scalar(7) == 7
    assert parse_scalar(format_scalar(Fraction(-9, 7))) == Fraction(-9, 7)


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_scalar("not-a-number")
    with pytest.raises(TypeError):
        parse_scalar(None)
    with pytest.raises(TypeError):
        parse_scalar(True)


def test_exact_comparisons_are_exact():
    a = Fraction(1, 3)
    b = Fraction(1, 3) + Fraction(1, 10 ** 30)
    assert not eq(a, b)
    assert lt(a, b)
    assert is_exact(a, b, 5)
    assert not is_exact(a, 0.5)


def test_float_comparisons_use_tolerance():
    scalars.set_tolerance(1e-6)
    assert eq(1.0, 1.0 + 1e-9)
    assert le(1.0 + 1e-9, 1.0)
    assert not lt(1.0, 1.0 + 1e-9)   # strict needs a real margin
    assert gt(1.0 + 1e-3, 1.0)
    assert sign(1e-9) == 0
    assert sign(-1e-3) == -1


def test_tolerance_must_be_positive():
    with pytest.raises(ValueError):
        scalars.set_tolerance(0)


def test_div_stays_exact_for_ints():
    q = div(1, 3)
    assert q == Fraction(1, 3)
    assert isinstance(q, Fraction)
    assert div(1.0, 4) == 0.25


def test_reduced_fractions_invariant():
    # Fraction keeps itself reduced; spot-check the normalization
    v = parse_scalar("6/8")
    assert v.numerator == 3 and v.denominator == 4
