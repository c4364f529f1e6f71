from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from syllogist.config import OracleOptions, SearchOptions
from syllogist.errors import InconsistentPremises, MalformedInterval, PatternArityError, ZeroConverse
from syllogist.frameworks.dubois import (
    PatternIIIInput,
    PatternIIInput,
    PatternIInput,
    pattern1_converse,
    pattern1_fuzzy,
    pattern1_imprecise,
    pattern1_precise,
    pattern1_search,
    pattern23_bounds,
    pattern23_fuzzy,
    pattern23_range,
)
from syllogist.numbers import (
    Classical,
    ClassicalLetter,
    Fuzzy,
    Imprecise,
    Interval,
    Precise,
    TrapezoidalQuantifier,
    iv_entails,
    make_interval,
)
from syllogist.oracle import VennModel

FAST = SearchOptions(sweep_step=0.05, refine_rounds=1)


def imprecise(lower: float, upper: float, **openness: bool) -> Imprecise:
    return Imprecise(interval=make_interval(lower, upper, **openness))


def bounds(interval: Interval) -> tuple[float, float]:
    return interval.lower, interval.upper


STUDENTS = PatternIInput(
    q1=imprecise(0.85, 0.95),
    q1_conv=imprecise(0.25, 0.35),
    q2=imprecise(0.9, 1.0),
    q2_conv=imprecise(0.6, 0.8),
)


@pytest.mark.parametrize(
    "premises, expected",
    [
        ((1, 0.5, 1, 0.5), (1, 1)),
        ((1, 0.5, 0, 0.5), (0, 0)),
        ((0.5, 0.5, 0.5, 0.5), (0, 1)),
        ((0.2, 1, 1, 1), (0.2, 0.2)),
    ],
)
def test_precise(premises: tuple[float, ...], expected: tuple[float, float]):
    assert bounds(pattern1_precise(*premises)) == pytest.approx(expected)


def test_printed_upper_bound_undercuts_a_real_model():
    # B = C, a fifth of A: the true proportion of As that are Cs is 0.2
    model = VennModel(atoms=(0, 0, 0, 0, 4, 0, 0, 1))
    premises = [
        float(model.proportion("B", "A")),
        float(model.proportion("A", "B")),
        float(model.proportion("C", "B")),
        float(model.proportion("B", "C")),
    ]
    assert premises == [0.2, 1.0, 1.0, 1.0]
    assert float(model.proportion("C", "A")) == pytest.approx(0.2)
    assert pattern1_precise(*premises).contains(0.2)
    with pytest.raises(InconsistentPremises):
        pattern1_precise(*premises, upper_bound_form="printed")


def test_precise_rejects_zero_converse_and_non_proportions():
    with pytest.raises(ZeroConverse):
        pattern1_precise(0.5, 0.0, 0.5, 0.5)
    with pytest.raises(MalformedInterval):
        pattern1_precise(1.2, 0.5, 0.5, 0.5)


def test_students_are_single():
    result = pattern1_search(STUDENTS)
    assert bounds(result.conclusion) == pytest.approx((0.51, 1.0), abs=1e-6)
    assert result.agreed
    assert abs(result.vertex_lower - result.grid_lower) <= 1e-6
    assert not result.conclusion.lower_open and not result.conclusion.upper_open


def test_degenerate_and_vacuous_boxes():
    ones = PatternIInput(q1=Precise(value=1), q1_conv=Precise(value=1), q2=Precise(value=1), q2_conv=Precise(value=1))
    assert bounds(pattern1_imprecise(ones, FAST)) == (1, 1)

    unknown = imprecise(0, 1, lower_open=True)
    vacuous = PatternIInput(q1=imprecise(0, 1), q1_conv=unknown, q2=imprecise(0, 1), q2_conv=unknown)
    assert bounds(pattern1_imprecise(vacuous, SearchOptions(sweep_step=0.1, refine_rounds=1))) == (0, 1)


def test_converse_interval_closed_at_zero():
    pattern = STUDENTS.model_copy(update={"q1_conv": imprecise(0, 0.35)})
    with pytest.raises(ZeroConverse):
        pattern1_search(pattern, FAST)


def test_classical_premises():
    some = Classical(letter=ClassicalLetter.I)
    unknown = imprecise(0, 1, lower_open=True)
    pattern = PatternIInput(q1=some, q1_conv=unknown, q2=Classical(letter=ClassicalLetter.A), q2_conv=unknown)
    conclusion = pattern1_imprecise(pattern, FAST)
    assert conclusion.lower == 0 and conclusion.lower_open
    assert conclusion.upper == 1


@settings(max_examples=20, derandomize=True, deadline=None)
@given(
    st.floats(0.0, 0.9),
    st.floats(0.0, 0.1),
    st.sampled_from(["q1", "q1_conv", "q2", "q2_conv"]),
)
def test_widening_a_premise_never_narrows(low: float, width: float, slot: str):
    base = PatternIInput(q1=imprecise(0.6, 0.7), q1_conv=imprecise(0.4, 0.5), q2=imprecise(0.7, 0.8), q2_conv=imprecise(0.5, 0.6))
    current = getattr(base, slot).interval
    wider = imprecise(min(current.lower, max(low, 0.05)), max(current.upper, min(1.0, low + width)))
    narrow = pattern1_imprecise(base, FAST)
    wide = pattern1_imprecise(base.model_copy(update={slot: wider}), FAST)
    assert iv_entails(narrow, wide, tolerance=1e-9)


def test_fuzzy_kernel_and_support():
    def lifted(lower: float, upper: float) -> Fuzzy:
        points = [max(0.0, lower - 0.05), lower, upper, min(1.0, upper + 0.05)]
        return Fuzzy(trapezoid=TrapezoidalQuantifier.from_points(points))

    pattern = PatternIInput(
        q1=lifted(0.85, 0.95),
        q1_conv=lifted(0.25, 0.35),
        q2=lifted(0.9, 1.0),
        q2_conv=lifted(0.6, 0.8),
    )
    result = pattern1_fuzzy(pattern)
    assert bounds(result.kernel) == pytest.approx((0.51, 1.0), abs=1e-6)
    # q1 = 0.8, q1' = 0.2, q2 = 0.85 at the support corner
    assert bounds(result.support) == pytest.approx((0.2, 1.0), abs=1e-6)


def test_fuzzy_with_crisp_slots_matches_precise():
    def point(value: float) -> Fuzzy:
        return Fuzzy(trapezoid=TrapezoidalQuantifier.from_points([value] * 4))

    pattern = PatternIInput(q1=point(0.9), q1_conv=point(0.6), q2=point(0.8), q2_conv=point(0.7))
    result = pattern1_fuzzy(pattern, FAST)
    expected = pattern1_precise(0.9, 0.6, 0.8, 0.7)
    assert result.points == pytest.approx((expected.lower, expected.lower, expected.upper, expected.upper))


def test_converse_swaps_the_roles():
    pattern = PatternIInput(q1=Precise(value=0.5), q1_conv=Precise(value=1), q2=Precise(value=1), q2_conv=Precise(value=0.5))
    forward = pattern1_imprecise(pattern, FAST)
    backward = pattern1_converse(pattern, FAST)
    assert bounds(forward) == pytest.approx(bounds(pattern1_precise(0.5, 1, 1, 0.5)))
    assert bounds(backward) == pytest.approx(bounds(pattern1_precise(0.5, 1, 1, 0.5)))
    assert pattern.converse().converse() == pattern


@st.composite
def venn_models(draw) -> VennModel:
    atoms = tuple(draw(st.lists(st.integers(0, 6), min_size=8, max_size=8)))
    return VennModel(atoms=atoms)


@settings(max_examples=200, derandomize=True, deadline=None)
@given(venn_models())
def test_closed_form_contains_every_model(model: VennModel):
    assume(model.has_nonempty_terms)
    assume(model.cardinality(frozenset({6, 7})) > 0 and model.cardinality(frozenset({3, 7})) > 0)
    premises = [float(model.proportion(n, d)) for n, d in (("B", "A"), ("A", "B"), ("C", "B"), ("B", "C"))]
    actual = float(model.proportion("C", "A"))
    assert pattern1_precise(*premises).contains(actual, tolerance=1e-9)


def test_few_parents_young_and_single():
    pattern = PatternIIIInput.from_premises("particular", [imprecise(0.05, 0.1), imprecise(0.15, 0.2)])
    attained = pattern23_range(pattern, OracleOptions(total_max=20))
    assert (attained.lower, attained.upper) == (Fraction(0), Fraction(1, 10))
    assert bounds(attained.interval) == (0, 0.1)


@pytest.mark.slow
def test_few_parents_young_and_single_full_budget():
    pattern = PatternIIIInput.from_premises("particular", [imprecise(0.05, 0.1), imprecise(0.15, 0.2)])
    assert bounds(pattern23_bounds(pattern, OracleOptions(total_max=60))) == (0, 0.1)


@pytest.mark.parametrize(
    "a, b",
    [((0.05, 0.1), (0.15, 0.2)), ((0.5, 0.5), (0.75, 0.75)), ((0.25, 0.5), (0.5, 1.0)), ((1.0, 1.0), (1.0, 1.0))],
)
def test_pattern3_particular_is_frechet(a: tuple[float, float], b: tuple[float, float]):
    pattern = PatternIIIInput.from_premises("particular", [imprecise(*a), imprecise(*b)])
    expected = (max(0.0, a[0] + b[0] - 1), min(a[1], b[1]))
    assert bounds(pattern23_bounds(pattern, OracleOptions(total_max=12))) == pytest.approx(expected)


def test_pattern2_particular_inclusion_chain():
    pattern = PatternIIInput.from_premises(
        "particular",
        [Precise(value=1), imprecise(0.25, 1), Precise(value=1), Precise(value=1)],
    )
    assert bounds(pattern23_bounds(pattern, OracleOptions(total_max=8))) == (1, 1)


def test_pattern_arity():
    with pytest.raises(PatternArityError):
        PatternIIIInput.from_premises("particular", [Precise(value=1)])
    with pytest.raises(PatternArityError):
        _ = PatternIIInput(version="general", q1=Precise(value=1)).slots


def test_pattern3_fuzzy():
    def lifted(lower: float, upper: float) -> Fuzzy:
        return Fuzzy(trapezoid=TrapezoidalQuantifier.from_points([max(0.0, lower - 0.05), lower, upper, upper + 0.05]))

    pattern = PatternIIIInput.from_premises("particular", [lifted(0.05, 0.1), lifted(0.15, 0.2)])
    result = pattern23_fuzzy(pattern, OracleOptions(total_max=20))
    assert bounds(result.kernel) == pytest.approx((0.0, 0.1))
    assert bounds(result.support) == pytest.approx((0.0, 0.15))
