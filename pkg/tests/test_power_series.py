from fractions import Fraction

import pytest

from rescaling.exceptions import InvalidParameter, ZeroConstantTerm
from rescaling.models.power_series import PowerSeries, lcs_product


def test_reciprocal_of_one_minus_t():
    series = PowerSeries.of([1, -1], 6)
    assert series.reciprocal().coefficients == tuple(Fraction(1) for _ in range(7))


def test_negative_binomial_power():
    series = PowerSeries.binomial_power(-1, 1, -2, 5)
    assert list(series.coefficients) == [1, 2, 3, 4, 5, 6]


def test_binomial_power_stops_for_positive_exponent():
    series = PowerSeries.binomial_power(1, 2, 3, 10)
    assert list(series.coefficients) == [1, 0, 3, 0, 3, 0, 1, 0, 0, 0, 0]


def test_product_times_reciprocal_is_one():
    series = PowerSeries.of([1, 4, 1], 9)
    assert series * series.reciprocal() == PowerSeries.one(9)


def test_zero_constant_term_has_no_reciprocal():
    with pytest.raises(ZeroConstantTerm):
        PowerSeries.of([0, 1], 4).reciprocal()


def test_substitute_sign_and_degree():
    series = PowerSeries.of([1, 2], 6)
    assert list(series.substitute(-1, 2, 6).coefficients) == [1, 0, -2, 0, 0, 0, 0]


def test_substitute_default_order_tracks_known_degrees():
    series = PowerSeries.of([1, 2], 1).substitute(1, 3)
    assert series.order == 5
    assert list(series.coefficients) == [1, 0, 0, 2, 0, 0]


def test_substitute_rejects_bad_arguments():
    with pytest.raises(InvalidParameter):
        PowerSeries.one(3).substitute(2, 1)
    with pytest.raises(InvalidParameter):
        PowerSeries.one(3).substitute(1, 0)


def test_mixed_orders_keep_the_smaller():
    total = PowerSeries.of([1, 1], 3) + PowerSeries.of([1, 1], 5)
    assert total.order == 3
    assert list(total.coefficients) == [2, 2, 0, 0]


def test_exact_rational_coefficients():
    series = PowerSeries.of([1, Fraction(1, 3)], 2) * PowerSeries.of([1, Fraction(1, 3)], 2)
    assert series[1] == Fraction(2, 3)
    assert series[2] == Fraction(1, 9)
    assert not series.is_integral()


def test_first_difference():
    a = PowerSeries.of([1, 2, 3], 4)
    b = PowerSeries.of([1, 2, 4], 4)
    assert a.first_difference(b) == 2
    assert a.first_difference(a) is None


def test_str():
    assert str(PowerSeries.of([1, -2, 0, 1], 3)) == "1 - 2t + t^3 + O(t^4)"


def test_lcs_product():
    assert lcs_product([(1, 2)], 4) == PowerSeries.of([1, -2, 1], 4)
    assert lcs_product([(1, 2), (2, 1)], 3) == PowerSeries.of([1, -2, 0, 2], 3)


def test_negative_order_rejected():
    with pytest.raises(InvalidParameter):
        PowerSeries.of([1], -1)
