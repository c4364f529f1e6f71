import re

from syllogist.numbers import (
    Classical,
    Composed,
    Fuzzy,
    Imprecise,
    Precise,
    QuantifierKind,
    format_number,
)
from .statement import Statement

PLAIN_TERM = re.compile(r"[^\W\d][\w'\-]*")

RESERVED_WORDS = frozenset({"are"})

UNICODE_TO_ASCII = {"≥": ">=", "⊗": "*", "⊕": "+", "⊖": "-", "∨": "|"}


def render_quantifier(quantifier: QuantifierKind) -> str:
    """Canonical text of a quantifier; labelled quantifiers print their lexicon name."""
    if quantifier.label is not None:
        return quantifier.label
    if isinstance(quantifier, Precise):
        return quantifier.interval.render()
    if isinstance(quantifier, Imprecise):
        return quantifier.interval.render()
    if isinstance(quantifier, Classical):
        return quantifier.letter.word
    if isinstance(quantifier, Fuzzy):
        return quantifier.trapezoid.render()
    return quantifier.expression


def render_operand(quantifier: QuantifierKind) -> str:
    """A quantifier as it appears inside a composed expression."""
    if quantifier.label is None and isinstance(quantifier, Precise):
        return format_number(quantifier.value)
    if quantifier.label is None and isinstance(quantifier, Composed):
        return f"({quantifier.expression})"
    return render_quantifier(quantifier)


def render_term(term: str, reserved: frozenset[str] = frozenset()) -> str:
    if PLAIN_TERM.fullmatch(term) and term.lower() not in RESERVED_WORDS | reserved:
        return term
    return f'"{term}"'


def to_ascii(text: str) -> str:
    for symbol, ascii_form in UNICODE_TO_ASCII.items():
        text = text.replace(symbol, ascii_form)
    return text


def render_statement(
    statement: Statement,
    ascii: bool = False,
    reserved: frozenset[str] = frozenset(),
) -> str:
    """`reserved` holds lexicon names that must be quoted when used as terms."""
    quantifier = render_quantifier(statement.quantifier)
    if statement.at_least:
        quantifier = f"≥ {quantifier}"
    if ascii:
        quantifier = to_ascii(quantifier)
    subject = render_term(statement.subject, reserved)
    predicate = render_term(statement.predicate, reserved)
    return f"{quantifier} {subject} are {predicate}"
