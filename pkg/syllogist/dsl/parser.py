"""Recursive-descent parser for quantified statements.

    statement  := [">=" | "≥"] quantifier term "are" term
    quantifier := percent | expr
    percent    := N "%" "of" | "between" N "%" "and" N "%" "of"
                | ("at least" | "at most" | "more than" | "less than") N "%" "of"
    expr       := sum (("∨" | "|") sum)*
    sum        := product (("⊕" | "+" | "⊖" | "-") product)*
    product    := scaled (("⊗" | "*") scaled)*
    scaled     := NUMBER [primary] | primary
    primary    := "(" expr ")" | interval | trapezoid | phrase
    term       := WORD | QUOTED
"""

import re
from dataclasses import dataclass
from typing import Callable, Literal

from pydantic import ValidationError

from syllogist.errors import DslSyntaxError, MalformedInterval, SyllogistError, UnknownQuantifier
from syllogist.numbers import (
    DEFAULT_ALPHA_RESOLUTION,
    AlphaCutNumber,
    Classical,
    ClassicalLetter,
    Composed,
    Fuzzy,
    Interval,
    Precise,
    QuantifierKind,
    TrapezoidalQuantifier,
    format_number,
    fz_add,
    fz_max,
    fz_mul,
    fz_scale,
    fz_sub,
    make_interval,
    quantifier_from_interval,
    to_alpha_cuts,
)
from .lexicon import Lexicon
from .statement import Statement

TokenKind = Literal[
    "number", "percent", "lbrack", "rbrack", "lparen", "rparen",
    "lbrace", "rbrace", "comma", "op", "ge", "word", "quoted", "eof",
]


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    position: int


_NUMBER = re.compile(r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
_WORD = re.compile(r"[^\W\d][\w'\-]*")

_PUNCTUATION: dict[str, TokenKind] = {
    "[": "lbrack",
    "]": "rbrack",
    "(": "lparen",
    ")": "rparen",
    "{": "lbrace",
    "}": "rbrace",
    ",": "comma",
    "%": "percent",
}

_OPERATORS = {"⊗": "⊗", "*": "⊗", "⊕": "⊕", "+": "⊕", "⊖": "⊖", "-": "⊖", "∨": "∨", "|": "∨"}

CLASSICAL_PHRASES: dict[str, ClassicalLetter] = {
    "all": ClassicalLetter.A,
    "no": ClassicalLetter.E,
    "none": ClassicalLetter.E,
    "some": ClassicalLetter.I,
    "not all": ClassicalLetter.O,
}

PERCENT_OPENERS = frozenset({"between", "at", "more", "less"})


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    while i < len(text):
        char = text[i]
        if char.isspace():
            i += 1
        elif char == "≥":
            tokens.append(Token("ge", char, i))
            i += 1
        elif text.startswith(">=", i):
            tokens.append(Token("ge", ">=", i))
            i += 2
        elif char in _PUNCTUATION:
            tokens.append(Token(_PUNCTUATION[char], char, i))
            i += 1
        elif char in _OPERATORS:
            tokens.append(Token("op", _OPERATORS[char], i))
            i += 1
        elif char == '"':
            end = text.find('"', i + 1)
            if end < 0:
                raise DslSyntaxError("unterminated quoted term", position=i)
            tokens.append(Token("quoted", text[i + 1 : end], i))
            i = end + 1
        elif match := _NUMBER.match(text, i):
            tokens.append(Token("number", match.group(), i))
            i = match.end()
        elif match := _WORD.match(text, i):
            tokens.append(Token("word", match.group(), i))
            i = match.end()
        else:
            raise DslSyntaxError(f"unexpected character {char!r}", position=i)
    tokens.append(Token("eof", "", len(text)))
    return tokens


# Expression tree of composed quantifiers


@dataclass(frozen=True)
class Num:
    value: float

    def render(self) -> str:
        return format_number(self.value)

    def evaluate(self, resolution: int) -> AlphaCutNumber:
        return AlphaCutNumber.crisp_point(self.value, resolution)


@dataclass(frozen=True)
class Atom:
    quantifier: QuantifierKind
    text: str

    def render(self) -> str:
        return self.text

    def evaluate(self, resolution: int) -> AlphaCutNumber:
        return to_alpha_cuts(self.quantifier, resolution)


@dataclass(frozen=True)
class Scale:
    factor: float
    operand: "Node"

    def render(self) -> str:
        return f"{format_number(self.factor)} {self.operand.render()}"

    def evaluate(self, resolution: int) -> AlphaCutNumber:
        return fz_scale(self.operand.evaluate(resolution), self.factor)


@dataclass(frozen=True)
class Group:
    inner: "Node"

    def render(self) -> str:
        return f"({self.inner.render()})"

    def evaluate(self, resolution: int) -> AlphaCutNumber:
        return self.inner.evaluate(resolution)


_FUZZY_OPS: dict[str, Callable[[AlphaCutNumber, AlphaCutNumber], AlphaCutNumber]] = {
    "⊗": fz_mul,
    "⊕": fz_add,
    "⊖": fz_sub,
    "∨": fz_max,
}


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Node"
    right: "Node"

    def render(self) -> str:
        if self.op == "⊗":
            return f"{self.left.render()}⊗{self.right.render()}"
        return f"{self.left.render()} {self.op} {self.right.render()}"

    def evaluate(self, resolution: int) -> AlphaCutNumber:
        return _FUZZY_OPS[self.op](self.left.evaluate(resolution), self.right.evaluate(resolution))


Node = Num | Atom | Scale | Group | Binary


class _Parser:
    def __init__(self, tokens: list[Token], lexicon: Lexicon, resolution: int) -> None:
        self.tokens = tokens
        self.lexicon = lexicon
        self.resolution = resolution
        self.index = 0

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.index + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.peek()
        self.index = min(self.index + 1, len(self.tokens) - 1)
        return token

    def expect(self, kind: TokenKind, what: str) -> Token:
        token = self.peek()
        if token.kind != kind:
            raise DslSyntaxError(f"expected {what}, found {token.text or 'end of input'!r}", position=token.position)
        return self.advance()

    def expect_word(self, word: str) -> Token:
        token = self.peek()
        if token.kind != "word" or token.text.lower() != word:
            raise DslSyntaxError(f"expected {word!r}, found {token.text or 'end of input'!r}", position=token.position)
        return self.advance()

    def word_is(self, offset: int, *words: str) -> bool:
        token = self.peek(offset)
        return token.kind == "word" and token.text.lower() in words

    # statement

    def statement(self) -> Statement:
        at_least = False
        if self.peek().kind == "ge":
            self.advance()
            at_least = True
        quantifier = self.quantifier()
        subject = self.term("a subject term")
        self.expect_word("are")
        predicate = self.term("a predicate term")
        self.expect("eof", "end of statement")
        if subject == predicate:
            raise DslSyntaxError(f"subject and predicate are both {subject!r}", position=0)
        return Statement(quantifier=quantifier, subject=subject, predicate=predicate, at_least=at_least)

    def term(self, what: str) -> str:
        token = self.peek()
        if token.kind not in ("word", "quoted"):
            raise DslSyntaxError(f"expected {what}, found {token.text or 'end of input'!r}", position=token.position)
        if token.kind == "quoted" and (not token.text.strip() or token.text != token.text.strip()):
            raise DslSyntaxError("quoted terms cannot be blank or padded with spaces", position=token.position)
        if "\n" in token.text or "\r" in token.text:
            raise DslSyntaxError("terms cannot span lines", position=token.position)
        return self.advance().text

    # quantifiers

    def quantifier(self) -> QuantifierKind:
        percent = self.percent()
        if percent is not None:
            return percent
        node = self.expr()
        if isinstance(node, Atom):
            return node.quantifier
        if isinstance(node, Num):
            return Precise(value=node.value)
        return Composed(expression=node.render(), value=node.evaluate(self.resolution))

    def percentage(self) -> float:
        token = self.expect("number", "a percentage")
        self.expect("percent", "'%'")
        value = float(token.text)
        if not 0.0 <= value <= 100.0:
            raise MalformedInterval("percentage outside 0..100", value=token.text, position=token.position)
        return value / 100.0

    def percent(self) -> QuantifierKind | None:
        token = self.peek()
        start = token.position
        if token.kind == "number" and self.peek(1).kind == "percent":
            value = self.percentage()
            self.expect_word("of")
            return Precise(value=value)
        if token.kind != "word" or token.text.lower() not in PERCENT_OPENERS:
            return None

        opener = token.text.lower()
        if opener == "between" and self.peek(1).kind == "number":
            self.advance()
            low = self.percentage()
            self.expect_word("and")
            high = self.percentage()
            self.expect_word("of")
            return quantifier_from_interval(self._interval(low, high, False, False, start))

        second = {"at": ("least", "most"), "more": ("than",), "less": ("than",)}.get(opener, ())
        if not (self.word_is(1, *second) and self.peek(2).kind == "number"):
            return None
        phrase = f"{opener} {self.peek(1).text.lower()}"
        self.advance()
        self.advance()
        value = self.percentage()
        self.expect_word("of")
        if phrase == "at least":
            interval = self._interval(value, 1.0, False, False, start)
        elif phrase == "at most":
            interval = self._interval(0.0, value, False, False, start)
        elif phrase == "more than":
            interval = self._interval(value, 1.0, True, False, start)
        else:
            interval = self._interval(0.0, value, False, True, start)
        return quantifier_from_interval(interval)

    @staticmethod
    def _interval(low: float, high: float, low_open: bool, high_open: bool, position: int) -> Interval:
        try:
            return make_interval(low, high, lower_open=low_open, upper_open=high_open, proportional=True)
        except MalformedInterval as e:
            raise MalformedInterval(e.message, position=position, **e.context) from e

    # expressions

    def expr(self) -> Node:
        node = self.sum()
        while self.peek().kind == "op" and self.peek().text == "∨":
            self.advance()
            node = Binary("∨", node, self.sum())
        return node

    def sum(self) -> Node:
        node = self.product()
        while self.peek().kind == "op" and self.peek().text in ("⊕", "⊖"):
            op = self.advance().text
            node = Binary(op, node, self.product())
        return node

    def product(self) -> Node:
        node = self.scaled()
        while self.peek().kind == "op" and self.peek().text == "⊗":
            self.advance()
            node = Binary("⊗", node, self.scaled())
        return node

    def scaled(self) -> Node:
        if self.peek().kind != "number":
            return self.primary()
        factor = float(self.advance().text)
        if self.starts_primary():
            return Scale(factor, self.primary())
        return Num(factor)

    def starts_primary(self) -> bool:
        token = self.peek()
        if token.kind in ("lparen", "lbrack", "lbrace"):
            return True
        return token.kind == "word" and self.match_phrase() is not None

    def primary(self) -> Node:
        token = self.peek()
        if token.kind == "lparen" and not (self.peek(1).kind == "number" and self.peek(2).kind == "comma"):
            self.advance()
            inner = self.expr()
            self.expect("rparen", "')'")
            return Group(inner)
        if token.kind in ("lparen", "lbrack"):
            return self.interval_literal()
        if token.kind == "lbrace":
            return self.trapezoid_literal()
        if token.kind == "word":
            phrase = self.match_phrase()
            if phrase is None:
                raise UnknownQuantifier(f"unknown quantifier {token.text!r}", position=token.position)
            words, atom = phrase
            for _ in range(words):
                self.advance()
            return atom
        raise DslSyntaxError(f"expected a quantifier, found {token.text or 'end of input'!r}", position=token.position)

    def match_phrase(self) -> tuple[int, Atom] | None:
        """Longest run of words naming a lexicon entry or a classical quantifier."""
        longest = max(self.lexicon.max_phrase_words, 2)
        words: list[str] = []
        for offset in range(longest):
            token = self.peek(offset)
            if token.kind != "word":
                break
            words.append(token.text.lower())

        for n in range(len(words), 0, -1):
            phrase = " ".join(words[:n])
            quantifier = self.lexicon.quantifier(phrase)
            if quantifier is not None:
                return n, Atom(quantifier, phrase)
            if phrase in CLASSICAL_PHRASES:
                letter = CLASSICAL_PHRASES[phrase]
                return n, Atom(Classical(letter=letter), letter.word)
        return None

    def interval_literal(self) -> Atom:
        start = self.advance()
        low = float(self.expect("number", "a lower bound").text)
        self.expect("comma", "','")
        high = float(self.expect("number", "an upper bound").text)
        close = self.peek()
        if close.kind not in ("rbrack", "rparen"):
            raise DslSyntaxError("expected ']' or ')'", position=close.position)
        self.advance()
        interval = self._interval(low, high, start.kind == "lparen", close.kind == "rparen", start.position)
        return Atom(quantifier_from_interval(interval), interval.render())

    def trapezoid_literal(self) -> Atom:
        start = self.advance()
        points = [float(self.expect("number", "a trapezoid point").text)]
        for _ in range(3):
            self.expect("comma", "','")
            points.append(float(self.expect("number", "a trapezoid point").text))
        self.expect("rbrace", "'}'")
        if not all(0.0 <= p <= 1.0 for p in points) or points != sorted(points):
            raise MalformedInterval(
                "trapezoid points must be non-decreasing proportions",
                points=points,
                position=start.position,
            )
        trapezoid = TrapezoidalQuantifier.from_points(points)
        return Atom(Fuzzy(trapezoid=trapezoid), trapezoid.render())


def parse_statement(
    text: str | bytes,
    lexicon: Lexicon | None = None,
    resolution: int = DEFAULT_ALPHA_RESOLUTION,
) -> Statement:
    """Parse one statement; every failure surfaces as a SyllogistError."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise DslSyntaxError("statement is not valid UTF-8", position=e.start) from e

    parser = _Parser(tokenize(text), lexicon or Lexicon.empty(), resolution)
    try:
        return parser.statement()
    except SyllogistError:
        raise
    except (ValidationError, ValueError, ArithmeticError, RecursionError) as e:
        raise DslSyntaxError(f"invalid statement: {e}", position=parser.peek().position) from e
