import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pebbling.series import IntSeries, NotInvertibleError, TruncationError, poly


def trunc(coeffs, order, valuation=0):
    return IntSeries.from_coeffs(coeffs, valuation, order)


def test_shift():
    s = poly([1, 1]).shift(3)
    assert s.valuation == 3
    assert s.terms() == [(3, 1), (4, 1)]


def test_add_contracts_order():
    s = trunc([1, -1], 5) + poly([0, 1]).truncate(2)
    assert s.order == 2
    assert s.dense(0, 2) == [1, 0, 0]


def test_negate():
    assert (-poly([-1, 1])).terms() == [(0, 1), (1, -1)]


def test_mul_exact():
    assert (poly([1, 1]) * poly([1, -1])).terms() == [(0, 1), (2, -1)]


def test_mul_geometric_by_one_minus_z():
    s = IntSeries.geometric(1, 4) * poly([1, -1])
    assert s.order == 4
    assert s.dense(0, 4) == [1, 0, 0, 0, 0]


def test_mul_order_rule():
    # (v1, N1) = (2, 6), (v2, N2) = (1, 3): order min(6 + 1, 3 + 2) = 5
    a = trunc([1, 2, 3], 6, valuation=2)
    b = trunc([1, 1], 3, valuation=1)
    assert (a * b).order == 5


def test_geometric_square():
    g = IntSeries.geometric(1, 4)
    assert (g * g).dense(0, 4) == [1, 2, 3, 4, 5]


def test_invert_one_minus_z():
    s = poly([1, -1]).truncate(4).invert()
    assert s.dense(0, 4) == [1, 1, 1, 1, 1]
    assert s.order == 4


def test_invert_negative_unit_and_valuation():
    s = trunc([-1, 1, 2, 2], 5, valuation=2)  # -z^2 + ...
    t = s.invert()
    assert t.valuation == -2
    assert t.order == 5 - 4
    prod = s * t
    assert prod.dense(0, prod.order) == [1] + [0] * prod.order


def test_invert_non_unit():
    with pytest.raises(NotInvertibleError):
        poly([2, -1]).invert(order=5)


def test_invert_exact_needs_order():
    with pytest.raises(ValueError):
        poly([1, -1]).invert()


def test_coefficient_beyond_order_is_unknown():
    s = trunc([1, 2, 3], 2)
    assert s[2] == 3
    with pytest.raises(TruncationError):
        s.coeff(3)


def test_leading_zeros_normalised():
    s = trunc([0, 0, 5, 1], 6)
    assert s.valuation == 2
    assert s.coeffs[0] == 5


def test_zero_truncated_series():
    s = trunc([0, 0, 0], 2)
    assert s.is_zero
    assert s.coeff(1) == 0


def test_divide_and_times_one_minus_power_roundtrip():
    s = trunc([3, -1, 4, 1, -5, 9, 2, -6], 7)
    assert s.divide_one_minus_power(3, times=2).times_one_minus_power(3, times=2).agrees_with(s)


def test_derivative():
    d = poly([5, 0, 1, 2], valuation=-1).derivative()  # 5/z + z + 2z^2
    assert d.terms() == [(-2, -5), (0, 1), (1, 4)]


def test_text_format():
    text = poly([1, 2]).truncate(2).to_text()
    assert text.splitlines() == ["valuation 0 / order 2", "0 1", "1 2", "2 0"]


def test_first_difference():
    a = trunc([1, 2, 3, 4], 3)
    b = trunc([1, 2, 7, 4, 5], 10)
    assert a.first_difference(b) == 2


small = st.lists(st.integers(-20, 20), min_size=1, max_size=8)


def _series(coeffs, val, order):
    return IntSeries.from_coeffs(coeffs, val, val + order)


series_st = st.builds(_series, small, st.integers(-3, 3), st.integers(0, 10))


@settings(max_examples=60, deadline=None)
@given(series_st, series_st, series_st)
def test_ring_axioms(a, b, c):
    assert ((a * b) * c).agrees_with(a * (b * c))
    assert (a * (b + c)).agrees_with(a * b + a * c)
    assert (a + b).agrees_with(b + a)
    assert (a * b).agrees_with(b * a)


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from([1, -1]),
    st.lists(st.integers(-9, 9), max_size=10),
    st.integers(-4, 4),
    st.integers(0, 12),
)
def test_invert_roundtrip(lead, rest, val, rel):
    s = IntSeries.from_coeffs([lead] + rest, val, val + rel)
    prod = s * s.invert()
    assert prod.order == rel
    assert prod.dense(0, prod.order) == [1] + [0] * rel
