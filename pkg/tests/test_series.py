import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fishburn.formulas import delta, gamma
from fishburn.series import (
    MAX_ORDER,
    SeriesError,
    TruncatedSeries,
    divide_by_t,
    first_difference,
    format_series,
    invert,
    parse_polynomial,
    partial_z_at_zero,
    substitute,
)

ORDER = 4

exponents = st.tuples(*[st.integers(0, ORDER)] * 5)
series = st.dictionaries(exponents, st.integers(-5, 5), max_size=6).map(
    lambda d: TruncatedSeries(ORDER, d)
)


def var(name, order=ORDER):
    return TruncatedSeries.var(name, order)


@given(series, series, series)
@settings(max_examples=60, deadline=None)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    assert a * 1 == a


@given(series)
@settings(max_examples=60, deadline=None)
def test_invert_units(a):
    # 1 + t*a always has t^0 part exactly 1
    unit = 1 + var("t") * a
    assert unit * invert(unit) == 1


@given(series, series)
@settings(max_examples=40, deadline=None)
def test_substitution_is_a_ring_map(a, b):
    s = var("u") * (1 + var("t") * var("z"))
    assert substitute(a * b, "u", s) == substitute(a, "u", s) * substitute(b, "u", s)
    assert substitute(a + b, "u", s) == substitute(a, "u", s) + substitute(b, "u", s)


@given(series, series)
@settings(max_examples=40, deadline=None)
def test_truncation_soundness(a, b):
    # multiplying at a higher order then truncating agrees with the low-order product
    hi = TruncatedSeries(ORDER + 2, a.terms) * TruncatedSeries(ORDER + 2, b.terms)
    assert hi.truncate(ORDER) == a * b


@given(st.dictionaries(st.tuples(*[st.integers(0, 8)] * 5), st.integers(-9, 9), max_size=8))
@settings(max_examples=20, deadline=None)
def test_invert_two_sided_at_order_8(terms):
    unit = 1 + TruncatedSeries.var("t", 8) * TruncatedSeries(8, terms)
    inv = invert(unit)
    assert inv * unit == 1 and unit * inv == 1


def test_truncation_drops_any_large_exponent():
    a = TruncatedSeries(2, {(0, 3, 0, 0, 0): 1, (1, 1, 0, 0, 0): 2})
    assert a.terms == {(1, 1, 0, 0, 0): 2}
    assert (var("u", 2) ** 3).is_zero()
    assert var("u", 2) * var("u", 2) * var("t", 2) == TruncatedSeries.monomial(2, t=1, u=2)


def test_geometric_inverse():
    t = var("t", 6)
    inv = invert(1 - t)
    assert inv == sum((t**k for k in range(7)), TruncatedSeries.zero(6))


def test_invert_rejects_non_unit():
    with pytest.raises(SeriesError):
        invert(2 + var("t"))
    with pytest.raises(SeriesError):
        invert(var("u") + var("t"))


@pytest.mark.parametrize("s", [1, 2, 3])
@pytest.mark.parametrize("k", [1, 2])
def test_delta_gamma_shift(s, k):
    order = 6
    u = var("u", order)
    dk = delta(k, order)
    shifted = u * invert(dk)
    assert substitute(delta(s, order), "u", shifted) * dk == delta(s + k, order)
    assert substitute(gamma(s, order), "u", shifted) * dk == gamma(s + k, order)


def test_substitute_rejects_bad_constant_terms():
    with pytest.raises(SeriesError):
        substitute(var("u"), "u", 2 * var("u"))
    with pytest.raises(SeriesError):
        substitute(var("u"), "u", var("u") ** 2)
    with pytest.raises(SeriesError):
        substitute(var("u"), "t", var("t"))


def test_substitute_constant():
    a = TruncatedSeries.parse("u v x z + z^2", ORDER)
    assert substitute(a, "x", 1) == TruncatedSeries.parse("u v z + z^2", ORDER)


def test_parse_and_format_roundtrip():
    text = "3 u^2 v^2 x z - z^2 t^3"
    a = TruncatedSeries.parse(text, 5)
    assert a.coefficient(u=2, v=2, x=1, z=1) == 3
    assert a.coefficient(t=3, z=2) == -1
    assert TruncatedSeries.parse(format_series(a), 5) == a
    assert parse_polynomial("u + u - 2 u") == {}
    with pytest.raises(ValueError):
        parse_polynomial("u ^ 2 (v)")


def test_json_roundtrip():
    a = TruncatedSeries.parse("12345678901234567890 u t + 1", 3)
    data = a.to_json()
    assert data["terms"][1]["c"] == "12345678901234567890"
    assert TruncatedSeries.from_json(data) == a


def test_first_difference_is_lexicographic():
    a = TruncatedSeries.parse("t u + t^2 + t^3 z", 4)
    b = TruncatedSeries.parse("t u + 2 t^2 + t^3", 4)
    assert first_difference(a, b) == ((2, 0, 0, 0, 0), 1, 2)
    assert first_difference(a, a) is None


def test_partial_z_and_divide_by_t():
    a = TruncatedSeries.parse("t z + 3 t^2 z + t^2 z^2 + 1", 4)
    d = partial_z_at_zero(a)
    assert d == TruncatedSeries.parse("t + 3 t^2", 4)
    assert divide_by_t(d) == TruncatedSeries.parse("1 + 3 t", 4)
    with pytest.raises(SeriesError):
        divide_by_t(a)


def test_order_bounds_and_mismatch():
    with pytest.raises(ValueError):
        TruncatedSeries(MAX_ORDER + 1)
    with pytest.raises(SeriesError):
        var("t", 3) + var("t", 4)


def test_big_integer_coefficients_are_exact():
    a = TruncatedSeries.constant(2**70, 3) * var("t", 3)
    assert (a * a).coefficient(t=2) == 2**140
