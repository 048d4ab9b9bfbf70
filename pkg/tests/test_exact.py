import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from heightforge.exact import (
    ExactReal,
    Ordering,
    exact_compare,
    exact_floor,
    exact_to_decimal,
    rational_root,
    render_exact,
    to_fixed,
)

positive = st.fractions(min_value=Fraction(1, 50), max_value=50)
exponents = st.fractions(min_value=-3, max_value=3, max_denominator=6)


def test_sqrt_products_compare_equal():
    assert exact_compare(ExactReal.sqrt(2) * ExactReal.sqrt(3), ExactReal.sqrt(6)) is Ordering.EQUAL


def test_perfect_square_collapses():
    assert ExactReal.sqrt(Fraction(9, 4)).is_rational
    assert ExactReal.sqrt(Fraction(9, 4)).to_fraction() == Fraction(3, 2)
    assert ExactReal.power(4, Fraction(1, 2)).rational_value() == 2


def test_fractional_powers_ordered_without_floats():
    # 2^(1/3) < 3^(1/4) because 2^4 = 16 < 27 = 3^3
    assert ExactReal.power(2, Fraction(1, 3)) < ExactReal.power(3, Fraction(1, 4))
    assert exact_compare(ExactReal.sqrt(2), Fraction(141421, 100000)) is Ordering.GREATER


def test_floor_and_fixed_point():
    assert exact_floor(ExactReal.sqrt(50)) == 7
    assert to_fixed(ExactReal.power(2, 7)) == "128.000000000000"
    assert to_fixed(ExactReal.sqrt(2)) == "1.414213562373"


def test_decimal_marks_exactness():
    assert exact_to_decimal(Fraction(1, 4), 5) == "0.25 (exact)"
    assert exact_to_decimal(ExactReal.sqrt(2), 5).startswith("≈1.414")


def test_render():
    assert render_exact(ExactReal.sqrt(2)) == "2^{1/2}"
    assert render_exact(ExactReal.power(Fraction(5, 2), 3)) == "125/8"
    assert render_exact(Fraction(-3, 4)) == "-3/4"


def test_rational_root():
    assert rational_root(Fraction(8, 27), 3) == Fraction(2, 3)
    assert rational_root(Fraction(2), 2) is None


def test_nonpositive_base_rejected():
    with pytest.raises(ValueError):
        ExactReal.of(0)


@given(positive, exponents, positive, exponents)
def test_compare_agrees_with_logs(a, e, b, f):
    x, y = ExactReal.power(a, e), ExactReal.power(b, f)
    gap = e * math.log(a) - f * math.log(b)
    if abs(gap) > 1e-9:
        expected = Ordering.GREATER if gap > 0 else Ordering.LESS
        assert exact_compare(x, y) is expected


@given(positive, exponents)
def test_product_with_inverse_is_one(a, e):
    x = ExactReal.power(a, e)
    assert exact_compare(x * (ExactReal.one() / x), 1) is Ordering.EQUAL


@given(positive)
def test_floor_of_sqrt_matches_isqrt(a):
    n = math.isqrt(a.numerator * a.denominator)
    # floor(sqrt(p/q)) = floor(isqrt(p*q) / q)
    assert exact_floor(ExactReal.sqrt(a)) == n // a.denominator
