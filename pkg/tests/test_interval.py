import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from syllogist.errors import DivisionByZeroInterval, MalformedInterval
from syllogist.numbers import (
    CLASSICAL_INTERVALS,
    ClassicalLetter,
    Interval,
    Precise,
    iv_add,
    iv_div,
    iv_entails,
    iv_mul,
    iv_sub,
    make_interval,
    quantifier_from_interval,
)

A, E, I, O = (CLASSICAL_INTERVALS[ClassicalLetter(x)] for x in "AEIO")


def closed(lower: float, upper: float) -> Interval:
    return make_interval(lower, upper)


@st.composite
def proportions(draw) -> Interval:
    lower = draw(st.floats(0.0, 1.0, allow_nan=False))
    upper = draw(st.floats(lower, 1.0, allow_nan=False))
    if lower == upper:
        return closed(lower, upper)
    return make_interval(lower, upper, lower_open=draw(st.booleans()), upper_open=draw(st.booleans()))


def test_add_clamps_to_unit():
    result = iv_add(closed(0.2, 0.3), closed(0.1, 0.4), clamp=True)
    assert (result.lower, result.upper) == pytest.approx((0.3, 0.7))
    assert iv_add(closed(0.0, 0.0), closed(0.5, 0.5)) == closed(0.5, 0.5)
    assert iv_add(closed(0.8, 0.9), closed(0.5, 0.6), clamp=True) == closed(1.0, 1.0)


def test_add_keeps_openness():
    result = iv_add(make_interval(0.0, 0.5, lower_open=True), closed(0.1, 0.2))
    assert result.lower_open and not result.upper_open


def test_sub_mul_div():
    assert iv_sub(closed(0.3, 0.4), closed(0.5, 0.6), clamp=True) == closed(0.0, 0.0)
    product = iv_mul(closed(0.5, 0.8), closed(0.5, 0.8))
    assert (product.lower, product.upper) == pytest.approx((0.25, 0.64))
    quotient = iv_div(closed(0.2, 0.4), closed(0.5, 1.0))
    assert (quotient.lower, quotient.upper) == pytest.approx((0.2, 0.8))


def test_unclamped_sub_leaves_the_unit_interval():
    result = iv_sub(closed(0.3, 0.4), closed(0.5, 0.6))
    assert (result.lower, result.upper) == pytest.approx((-0.3, -0.1))
    assert not result.is_proportion


def test_div_by_interval_touching_zero():
    with pytest.raises(DivisionByZeroInterval):
        iv_div(closed(0.2, 0.4), closed(0.0, 0.5))
    with pytest.raises(DivisionByZeroInterval):
        iv_div(closed(0.2, 0.4), make_interval(0.0, 0.5, lower_open=True))


@pytest.mark.parametrize(
    "specific, general, expected",
    [
        (E, O, True),
        (closed(0.0, 1.0), O, False),
        (A, I, True),
        (closed(0.0, 0.0), I, False),
        (I, closed(0.0, 1.0), True),
        (make_interval(0.0, 0.5, upper_open=True), make_interval(0.0, 0.5, upper_open=True), True),
    ],
)
def test_entails(specific: Interval, general: Interval, expected: bool):
    assert iv_entails(specific, general) is expected


def test_entails_tolerates_float_noise_at_closed_endpoints():
    assert iv_entails(closed(0.51 - 1e-12, 1.0), closed(0.51, 1.0))
    assert not iv_entails(closed(0.51 - 1e-6, 1.0), closed(0.51, 1.0))


def test_classical_contradictions():
    # A and O, E and I share no point
    assert A.contains(1.0) and not O.contains(1.0)
    assert E.contains(0.0) and not I.contains(0.0)
    assert I.contains(1.0) and O.contains(0.0)


@pytest.mark.parametrize(
    "lower, upper, kwargs",
    [
        (0.6, 0.4, {}),
        (0.5, 0.5, {"lower_open": True}),
        (-0.1, 0.5, {"proportional": True}),
        (0.5, 1.1, {"proportional": True}),
        (float("inf"), float("inf"), {}),
    ],
)
def test_malformed(lower: float, upper: float, kwargs: dict):
    with pytest.raises(MalformedInterval):
        make_interval(lower, upper, **kwargs)


@pytest.mark.parametrize(
    "interval, text",
    [
        (closed(0.25, 0.35), "[0.25, 0.35]"),
        (I, "(0, 1]"),
        (O, "[0, 1)"),
        (closed(1.0, 1.0), "[1, 1]"),
    ],
)
def test_render(interval: Interval, text: str):
    assert interval.render() == text


def test_point_interval_is_precise():
    assert quantifier_from_interval(closed(0.3, 0.3)) == Precise(value=0.3)


@settings(max_examples=200, derandomize=True)
@given(proportions(), proportions())
def test_add_and_mul_commute(a: Interval, b: Interval):
    assert iv_add(a, b) == iv_add(b, a)
    assert iv_mul(a, b) == iv_mul(b, a)


@settings(max_examples=200, derandomize=True)
@given(proportions())
def test_identities(a: Interval):
    assert iv_mul(a, closed(1.0, 1.0)) == a
    assert iv_add(a, closed(0.0, 0.0)) == a
    assert iv_entails(a, a)


@settings(max_examples=200, derandomize=True)
@given(proportions(), proportions(), st.floats(0.0, 0.2), st.floats(0.0, 0.2))
def test_mul_is_inclusion_monotone(a: Interval, b: Interval, widen_low: float, widen_high: float):
    wider = closed(max(0.0, a.lower - widen_low), min(1.0, a.upper + widen_high))
    assert iv_entails(iv_mul(a, b), iv_mul(wider, b))
    assert iv_entails(iv_add(a, b), iv_add(wider, b))


@settings(max_examples=200, derandomize=True)
@given(proportions(), proportions(), proportions())
def test_entails_is_transitive(a: Interval, b: Interval, c: Interval):
    if iv_entails(a, b, tolerance=0.0) and iv_entails(b, c, tolerance=0.0):
        assert iv_entails(a, c, tolerance=0.0)
