from fractions import Fraction
from math import comb

import pytest

from syllogist.dsl import Statement
from syllogist.errors import DslSyntaxError, ModelLimitExceeded, Unsatisfiable, UndefinedProportion, UsageError
from syllogist.frameworks.aristotle import Mood, TermAssignment, all_moods, crisp_holds, instantiate, valid_moods
from syllogist.numbers import Classical, ClassicalLetter, make_interval
from syllogist.oracle import (
    Proportion,
    ProportionConstraint,
    VennModel,
    attained_range,
    enumerate_models,
    mood_valid,
    parse_set_expression,
    syllogism_valid,
)


def constraint(numerator: str, denominator: str, lower: float, upper: float, **openness: bool) -> ProportionConstraint:
    return ProportionConstraint(
        numerator=numerator,
        denominator=denominator,
        bounds=make_interval(lower, upper, **openness),
    )


def test_set_expressions():
    assert parse_set_expression("A") == frozenset({4, 5, 6, 7})
    assert parse_set_expression("A&~B") == frozenset({4, 5})
    assert parse_set_expression("c ∩ a") == frozenset({5, 7})
    assert parse_set_expression("~~B") == parse_set_expression("B")


@pytest.mark.parametrize("text", ["", "A&", "D", "A|B", "&A"])
def test_malformed_set_expressions(text: str):
    with pytest.raises(DslSyntaxError):
        parse_set_expression(text)


def test_enumeration_counts():
    assert len(list(enumerate_models(1))) == 9
    assert len(list(enumerate_models(3))) == comb(3 + 8, 8)
    nonempty = list(enumerate_models(3, require_nonempty=True))
    assert VennModel(atoms=(0, 0, 0, 0, 0, 0, 0, 1)) in nonempty
    assert all(m.has_nonempty_terms for m in nonempty)


def test_model_proportions():
    model = VennModel(atoms=(0, 0, 1, 1, 2, 0, 1, 1))
    assert model.term_size("A") == 4
    assert model.proportion("B", "A") == Fraction(2, 4)
    assert model.proportion("C", "A&B") == Fraction(1, 2)
    with pytest.raises(UndefinedProportion):
        VennModel(atoms=(1, 0, 0, 0, 0, 0, 0, 0)).proportion("B", "A")


def test_valid_moods_are_exactly_the_catalogue():
    valid = {m for m in all_moods() if mood_valid(m, 8).valid}
    assert valid == set(valid_moods())


@pytest.mark.parametrize("name", ["AAA-1", "EIO-4", "EAO-3", "AAI-1"])
def test_catalogue_moods(name: str):
    validity = mood_valid(Mood.parse(name))
    assert validity.valid
    assert validity.conclusive


@pytest.mark.parametrize("name", ["AAA-2", "IEO-1", "III-1"])
def test_counterexamples_falsify_the_conclusion(name: str):
    mood = Mood.parse(name)
    validity = mood_valid(mood)
    assert not validity.valid
    model = validity.counterexample
    assert model is not None
    assert model.has_nonempty_terms

    sets = model.term_sets()
    syllogism = instantiate(mood, TermAssignment(minor="A", middle="B", major="C"))
    for premise in syllogism.premises:
        assert crisp_holds(premise.quantifier.letter, sets[premise.subject], sets[premise.predicate])
    conclusion = syllogism.conclusion
    assert conclusion is not None
    assert not crisp_holds(conclusion.quantifier.letter, sets[conclusion.subject], sets[conclusion.predicate])


def test_statement_lists_with_named_terms():
    premises = [
        Statement(quantifier=Classical(letter=ClassicalLetter.A), subject="B", predicate="C"),
        Statement(quantifier=Classical(letter=ClassicalLetter.A), subject="A", predicate="B"),
    ]
    conclusion = Statement(quantifier=Classical(letter=ClassicalLetter.I), subject="A", predicate="C")
    assert syllogism_valid(premises, conclusion, terms=("A", "B", "C")).valid


def test_small_budget_is_not_conclusive():
    validity = mood_valid(Mood.parse("AAA-1"), total_max=3)
    assert validity.valid and not validity.conclusive
    with pytest.raises(UsageError):
        mood_valid(Mood.parse("AAA-1"), total_max=2)


def test_transitive_inclusion():
    attained = attained_range(
        [constraint("B", "A", 1, 1), constraint("C", "B", 1, 1)],
        Proportion(numerator="C", denominator="A"),
        total_max=8,
    )
    assert (attained.lower, attained.upper) == (1, 1)


def test_unconstrained_proportion():
    attained = attained_range([], Proportion(numerator="B", denominator="A"), total_max=4)
    assert (attained.lower, attained.upper) == (0, 1)
    assert attained.lower_witness.proportion("B", "A") == 0
    assert attained.upper_witness.proportion("B", "A") == 1


def test_few_parents_young_and_single():
    attained = attained_range(
        [constraint("A", "C", 0.05, 0.1), constraint("B", "C", 0.15, 0.2)],
        Proportion(numerator="A&B", denominator="C"),
        total_max=20,
    )
    assert (attained.lower, attained.upper) == (Fraction(0), Fraction(1, 10))


@pytest.mark.slow
def test_few_parents_young_and_single_full_budget():
    attained = attained_range(
        [constraint("A", "C", 0.05, 0.1), constraint("B", "C", 0.15, 0.2)],
        Proportion(numerator="A&B", denominator="C"),
        total_max=60,
    )
    assert (attained.lower, attained.upper) == (Fraction(0), Fraction(1, 10))


def test_open_bounds_are_exact():
    attained = attained_range(
        [constraint("B", "A", 0.5, 1, lower_open=True)],
        Proportion(numerator="B", denominator="A"),
        total_max=6,
    )
    assert attained.lower == Fraction(3, 5)
    assert attained.upper == 1


def test_unsatisfiable():
    with pytest.raises(Unsatisfiable):
        attained_range(
            [constraint("B", "A", 1, 1), constraint("B", "A", 0, 0)],
            Proportion(numerator="C", denominator="A"),
            total_max=5,
        )


def test_undefined_target():
    with pytest.raises(UndefinedProportion):
        attained_range(
            [constraint("B", "A", 0, 0)],
            Proportion(numerator="C", denominator="A&B"),
            total_max=5,
        )


def test_tightening_never_widens():
    target = Proportion(numerator="C", denominator="A")
    loose = attained_range([constraint("B", "A", 0.5, 1)], target, total_max=8)
    tight = attained_range([constraint("B", "A", 0.5, 1), constraint("C", "B", 1, 1)], target, total_max=8)
    assert loose.lower <= tight.lower <= tight.upper <= loose.upper


def test_large_budgets_are_enumerated_in_full():
    # A single shared element needs |A| >= 34 to keep |A∩B| / |A| within 3%.
    attained = attained_range(
        [constraint("B", "A", 0.02, 0.03), constraint("C", "B", 0, 1)],
        Proportion(numerator="C", denominator="A"),
        total_max=40,
    )
    assert attained.total_max == 40
    assert (attained.lower, attained.upper) == (0, 1)
    for witness in (attained.lower_witness, attained.upper_witness):
        assert witness.term_size("A") >= 34
        assert witness.proportion("B", "A") == Fraction(1, witness.term_size("A"))


def test_model_limit_is_an_error():
    with pytest.raises(ModelLimitExceeded):
        attained_range(
            [constraint("B", "A", 0.5, 1)],
            Proportion(numerator="C", denominator="A"),
            total_max=60,
            model_limit=10_000,
        )
