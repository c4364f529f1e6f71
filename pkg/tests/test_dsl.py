import json
from pathlib import Path

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from syllogist.dsl import (
    Lexicon,
    Statement,
    load_lexicon,
    parse_file,
    parse_statement,
    parse_syllogism,
    pattern_arity,
    render_statement,
    tokenize,
)
from syllogist.errors import (
    DslSyntaxError,
    LexiconError,
    MalformedInterval,
    PatternArityError,
    SyllogismFileError,
    SyllogistError,
    UnknownQuantifier,
)
from syllogist.numbers import (
    Classical,
    ClassicalLetter,
    Composed,
    Fuzzy,
    Imprecise,
    Interval,
    Precise,
    TrapezoidalQuantifier,
    make_interval,
)


LEXICON = load_lexicon(Path(__file__).parent / "fixtures" / "lexicon.json")


KEYWORDS = {"all", "no", "none", "some", "not", "are", "between", "at", "more", "less", "of", "and"}


def bounds(interval: Interval) -> tuple[float, float]:
    return interval.lower, interval.upper


class TestParseStatement:
    def test_lexicon_quantifier(self, lexicon: Lexicon):
        statement = parse_statement("most students are young", lexicon)
        assert isinstance(statement.quantifier, Fuzzy)
        assert statement.quantifier.label == "most"
        assert (statement.subject, statement.predicate) == ("students", "young")
        assert not statement.at_least

    def test_multiword_lexicon_quantifier(self, lexicon: Lexicon):
        statement = parse_statement("Almost  all students are young", lexicon)
        assert statement.quantifier.label == "almost all"
        assert statement.subject == "students"

    @pytest.mark.parametrize(
        "text, letter",
        [
            ("all A are B", ClassicalLetter.A),
            ("no A are B", ClassicalLetter.E),
            ("none A are B", ClassicalLetter.E),
            ("some A are B", ClassicalLetter.I),
            ("not all A are B", ClassicalLetter.O),
        ],
    )
    def test_classical(self, text: str, letter: ClassicalLetter):
        statement = parse_statement(text)
        assert statement.quantifier == Classical(letter=letter)

    @pytest.mark.parametrize(
        "text, expected",
        [
            ("[0.2, 0.5) x are y", make_interval(0.2, 0.5, upper_open=True)),
            ("(0, 1] x are y", make_interval(0, 1, lower_open=True)),
            ("between 20% and 40% of x are y", make_interval(0.2, 0.4)),
            ("at least 60% of x are y", make_interval(0.6, 1)),
            ("at most 25% of x are y", make_interval(0, 0.25)),
            ("more than 50% of x are y", make_interval(0.5, 1, lower_open=True)),
            ("less than 10% of x are y", make_interval(0, 0.1, upper_open=True)),
        ],
    )
    def test_intervals(self, text: str, expected: Interval):
        quantifier = parse_statement(text).quantifier
        assert isinstance(quantifier, Imprecise)
        assert quantifier.interval == expected

    @pytest.mark.parametrize("text, value", [("30% of x are y", 0.3), ("100% of x are y", 1.0), ("[0.4, 0.4] x are y", 0.4)])
    def test_precise(self, text: str, value: float):
        assert parse_statement(text).quantifier == Precise(value=value)

    def test_trapezoid_literal(self):
        quantifier = parse_statement("{0.1, 0.2, 0.3, 0.4} x are y").quantifier
        assert quantifier == Fuzzy(trapezoid=TrapezoidalQuantifier.from_points([0.1, 0.2, 0.3, 0.4]))

    def test_composed(self, lexicon: Lexicon):
        statement = parse_statement("≥ 0 ∨ (2 most ⊖ 1) x are y", lexicon)
        assert statement.at_least
        quantifier = statement.quantifier
        assert isinstance(quantifier, Composed)
        assert quantifier.expression == "0 ∨ (2 most ⊖ 1)"
        assert bounds(quantifier.value.support) == pytest.approx((0.4, 1.0))
        assert bounds(quantifier.value.kernel) == pytest.approx((0.6, 0.8))

    def test_ascii_operators(self, lexicon: Lexicon):
        statement = parse_statement(">= most*most x are y", lexicon)
        assert statement.at_least
        assert statement.quantifier.expression == "most⊗most"
        assert bounds(statement.quantifier.value.kernel) == pytest.approx((0.64, 0.81))

    def test_quoted_terms(self, lexicon: Lexicon):
        statement = parse_statement('most "American cars" are "many"', lexicon)
        assert (statement.subject, statement.predicate) == ("American cars", "many")

    def test_bytes(self):
        assert parse_statement("some x are y".encode()).quantifier == Classical(letter=ClassicalLetter.I)
        with pytest.raises(DslSyntaxError):
            parse_statement(b"\xff\xfe")

    @pytest.mark.parametrize(
        "text, error",
        [
            ("mostly x are y", UnknownQuantifier),
            ("[0.5, 0.2] x are y", MalformedInterval),
            ("[0.5, 1.5] x are y", MalformedInterval),
            ("150% of x are y", MalformedInterval),
            ("{0.3, 0.2, 0.5, 0.6} x are y", MalformedInterval),
            ("all x are x", DslSyntaxError),
            ("all x is y", DslSyntaxError),
            ("all x are y z", DslSyntaxError),
            ('all "x are y', DslSyntaxError),
            ('all " x" are y', DslSyntaxError),
            ("all x are", DslSyntaxError),
            ("", DslSyntaxError),
            ("[0.2, 0.5 x are y", DslSyntaxError),
            ("all x are y !", DslSyntaxError),
        ],
    )
    def test_errors(self, text: str, error: type[SyllogistError]):
        with pytest.raises(error):
            parse_statement(text)

    def test_error_position(self):
        with pytest.raises(DslSyntaxError) as info:
            parse_statement("all x are y !")
        assert info.value.position == 12


def test_tokenize():
    kinds = [t.kind for t in tokenize('≥ 2 most ⊖ 1 "big cars" are y')]
    assert kinds == ["ge", "number", "word", "op", "number", "quoted", "word", "word", "eof"]


class TestRender:
    def test_statement(self, most: Fuzzy):
        statement = Statement(quantifier=most, subject="big cars", predicate="expensive", at_least=True)
        assert render_statement(statement) == '≥ most "big cars" are expensive'
        assert render_statement(statement, ascii=True) == '>= most "big cars" are expensive'

    def test_reserved_terms_are_quoted(self, lexicon: Lexicon):
        statement = Statement(quantifier=Classical(letter=ClassicalLetter.I), subject="few", predicate="are")
        assert render_statement(statement, reserved=lexicon.reserved_words()) == 'some "few" are "are"'

    def test_interval(self):
        statement = Statement(quantifier=Imprecise(interval=make_interval(0.51, 1)), subject="students", predicate="single")
        assert render_statement(statement) == "[0.51, 1] students are single"

    def test_composed_ascii(self, lexicon: Lexicon):
        statement = parse_statement("≥ most⊗most x are y", lexicon)
        assert render_statement(statement, ascii=True) == ">= most*most x are y"


# Round trip


@st.composite
def quantifiers(draw, lexicon: Lexicon):
    kind = draw(st.sampled_from(["precise", "imprecise", "classical", "fuzzy", "lexicon"]))
    if kind == "precise":
        return Precise(value=draw(st.floats(0.0, 1.0)))
    if kind == "imprecise":
        low, high = sorted(draw(st.lists(st.floats(0.0, 1.0), min_size=2, max_size=2, unique=True)))
        return Imprecise(interval=make_interval(low, high, lower_open=draw(st.booleans()), upper_open=draw(st.booleans())))
    if kind == "classical":
        return Classical(letter=draw(st.sampled_from(list(ClassicalLetter))))
    if kind == "fuzzy":
        points = sorted(draw(st.lists(st.floats(0.0, 1.0), min_size=4, max_size=4)))
        return Fuzzy(trapezoid=TrapezoidalQuantifier.from_points(points))
    return lexicon.quantifier(draw(st.sampled_from(lexicon.names)))


def terms(lexicon: Lexicon):
    reserved = KEYWORDS | set(lexicon.reserved_words()) | {w for name in lexicon.names for w in name.split()}
    plain = st.from_regex(r"[a-z]{3,8}", fullmatch=True).filter(lambda t: t not in reserved)
    quoted = st.lists(st.from_regex(r"[a-z]{2,6}", fullmatch=True), min_size=2, max_size=3).map(" ".join)
    return st.one_of(plain, quoted)


FUZZ_LEXICON = Lexicon.from_mapping({"most": {"trapezoid": [0.7, 0.8, 0.9, 1.0]}})
RAW_INPUT = st.one_of(st.binary(max_size=80), st.text(max_size=80))


def _check_round_trip(data) -> None:
    lexicon = LEXICON
    quantifier = data.draw(quantifiers(lexicon))
    subject = data.draw(terms(lexicon))
    predicate = data.draw(terms(lexicon))
    assume(subject != predicate)
    statement = Statement(quantifier=quantifier, subject=subject, predicate=predicate, at_least=data.draw(st.booleans()))

    text = render_statement(statement, reserved=lexicon.reserved_words())
    assert parse_statement(text, lexicon) == statement


def _check_fails_cleanly(raw: bytes | str) -> None:
    try:
        parse_statement(raw, FUZZ_LEXICON)
    except SyllogistError:
        pass


@settings(max_examples=200, derandomize=True, deadline=None)
@given(st.data())
def test_render_then_parse_is_identity(data):
    _check_round_trip(data)


@pytest.mark.slow
@settings(max_examples=1000, derandomize=True, deadline=None)
@given(st.data())
def test_render_then_parse_is_identity_full_size(data):
    _check_round_trip(data)


@settings(max_examples=500, derandomize=True, deadline=None)
@given(RAW_INPUT)
def test_arbitrary_input_fails_cleanly(raw):
    _check_fails_cleanly(raw)


@pytest.mark.slow
@settings(max_examples=10_000, derandomize=True, deadline=None)
@given(RAW_INPUT)
def test_arbitrary_input_fails_cleanly_full_size(raw):
    _check_fails_cleanly(raw)


# Syllogism files


class TestSyllogismFiles:
    def test_students(self, fixtures):
        parsed = parse_file(fixtures / "students.syl")
        assert parsed.pattern == "dubois1"
        assert parsed.version is None
        assert [p.line for p in parsed.premises] == [3, 4, 5, 6]
        assert parsed.expected is not None
        assert render_statement(parsed.expected) == "[0.51, 1] students are single"
        assert parsed.expected_line == 8

    def test_parents(self, fixtures):
        parsed = parse_file(fixtures / "parents.syl")
        assert (parsed.pattern, parsed.version) == ("dubois3", "particular")
        assert len(parsed.statements) == 2
        assert parsed.expected is not None
        assert parsed.expected.predicate == "single and young"

    def test_composed_expectation(self, fixtures, lexicon: Lexicon):
        parsed = parse_file(fixtures / "cars_mc.syl", lexicon)
        assert parsed.expected is not None
        assert parsed.expected.at_least
        assert parsed.expected.quantifier.expression == "most⊗most"

    def test_without_pattern_line(self):
        parsed = parse_syllogism("# just statements\nsome x are y\nall y are z  # trailing\n")
        assert parsed.pattern is None
        assert len(parsed.premises) == 2
        assert parsed.expected is None

    def test_hash_inside_quotes(self):
        parsed = parse_syllogism('some x are "room #4"')
        assert parsed.statements[0].predicate == "room #4"

    @pytest.mark.parametrize(
        "text, line",
        [
            ("some x are y\n---\nall x are y\n---\n", 4),
            ("some x are y\npattern: mc\n", 2),
            ("pattern: syllogize\nsome x are y\n", 1),
            ("some x are y\n---\nall x are y\nno x are y\n", 4),
        ],
    )
    def test_structure_errors(self, text: str, line: int):
        with pytest.raises(SyllogismFileError) as info:
            parse_syllogism(text)
        assert info.value.line == line

    def test_no_premises(self):
        with pytest.raises(SyllogismFileError):
            parse_syllogism("# nothing here\n---\nsome x are y\n")

    def test_arity(self):
        with pytest.raises(PatternArityError):
            parse_syllogism("pattern: dubois1\nsome x are y\nall y are z\n")
        assert pattern_arity("dubois2") == 6
        assert pattern_arity("dubois2", "particular") == 4
        assert pattern_arity("dubois3", "particular") == 2
        assert pattern_arity("consequent-or") == 2

    def test_statement_errors_carry_the_line(self):
        with pytest.raises(UnknownQuantifier) as info:
            parse_syllogism("some x are y\nmostly y are z\n", path="cars.syl")
        assert info.value.context["line"] == 2
        assert info.value.context["path"] == "cars.syl"

    def test_missing_file(self, tmp_path):
        with pytest.raises(SyllogismFileError):
            parse_file(tmp_path / "missing.syl")


# Lexicons


class TestLexicon:
    def test_json(self, lexicon: Lexicon):
        assert lexicon.names == ["about ten", "almost all", "few", "many", "most"]
        assert lexicon.symmetric_labels == frozenset({"about ten"})
        assert lexicon.max_phrase_words == 2
        assert "Almost   All" in lexicon

        many = lexicon.quantifier("many")
        assert isinstance(many, Imprecise)
        assert many.interval == make_interval(0.5, 1, lower_open=True)
        assert lexicon.is_absolute(lexicon.quantifier("about ten"))
        assert not lexicon.is_absolute(many)
        assert not lexicon.is_absolute(Precise(value=0.5))

    def test_yaml(self, tmp_path):
        path = tmp_path / "lexicon.yaml"
        path.write_text("most:\n  trapezoid: [0.7, 0.8, 0.9, 1.0]\nevery:\n  classical: A\n", encoding="utf-8")
        lexicon = load_lexicon(path)
        assert lexicon.quantifier("every") == Classical(letter=ClassicalLetter.A, label="every")
        assert parse_statement("every x are y", lexicon).quantifier.label == "every"

    @pytest.mark.parametrize(
        "mapping",
        [
            {"most": {"trapezoid": [0.7, 0.8, 0.9, 1.0], "interval": [0.5, 1.0]}},
            {"most": {}},
            {"most": {"trapezoid": [0.9, 0.8, 0.9, 1.0]}},
            {"most": {"interval": [0.8, 0.5]}},
            {"most": {"interval": [0.5, 1.5]}},
            {"dozens": {"trapezoid": [-1, 10, 20, 30], "kind": "absolute"}},
            {"every": {"classical": "A", "kind": "absolute"}},
            {"most": {"trapezoid": [0.7, 0.8, 0.9, 1.0], "colour": "red"}},
            {"Most": {"classical": "A"}, "most": {"classical": "A"}},
            {"top10": {"classical": "A"}},
            ["most"],
        ],
    )
    def test_invalid(self, mapping):
        with pytest.raises(LexiconError):
            Lexicon.from_mapping(mapping)

    @pytest.mark.parametrize("name, content", [("lexicon.txt", "{}"), ("lexicon.json", "{"), ("lexicon.yaml", "most: [")])
    def test_unreadable(self, tmp_path, name: str, content: str):
        path = tmp_path / name
        path.write_text(content, encoding="utf-8")
        with pytest.raises(LexiconError):
            load_lexicon(path)

    def test_missing(self, tmp_path):
        with pytest.raises(LexiconError):
            load_lexicon(tmp_path / "missing.json")

    def test_round_trip_through_json(self, tmp_path, lexicon: Lexicon):
        path = tmp_path / "copy.json"
        path.write_text(
            json.dumps({name: entry.model_dump(exclude_defaults=True) for name, entry in lexicon.entries.items()}),
            encoding="utf-8",
        )
        assert load_lexicon(path).entries == lexicon.entries
