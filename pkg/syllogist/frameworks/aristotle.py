"""The classical catalogue: figures, the 24 valid moods and crisp quantifier semantics."""

import re
from collections.abc import Set
from enum import Enum
from itertools import product
from typing import Literal

from pydantic import BaseModel, ConfigDict, model_validator

from syllogist.dsl.statement import Statement, Syllogism
from syllogist.errors import EmptyTerm, UsageError
from syllogist.numbers import Classical, ClassicalLetter

Letter = ClassicalLetter
Role = Literal["major", "minor", "middle"]


class Figure(str, Enum):
    I = "I"  # noqa: E741
    II = "II"
    III = "III"
    IV = "IV"

    @property
    def number(self) -> int:
        return _FIGURE_NUMBERS[self]

    @classmethod
    def from_number(cls, number: int) -> "Figure":
        for figure, n in _FIGURE_NUMBERS.items():
            if n == number:
                return figure
        raise UsageError(f"no figure {number}; figures are numbered 1 to 4")

    @property
    def templates(self) -> tuple[tuple[Role, Role], tuple[Role, Role]]:
        """(subject, predicate) roles of the major and the minor premise."""
        return FIGURE_TEMPLATES[self]


_FIGURE_NUMBERS = {Figure.I: 1, Figure.II: 2, Figure.III: 3, Figure.IV: 4}

FIGURE_TEMPLATES: dict[Figure, tuple[tuple[Role, Role], tuple[Role, Role]]] = {
    Figure.I: (("middle", "major"), ("minor", "middle")),
    Figure.II: (("major", "middle"), ("minor", "middle")),
    Figure.III: (("middle", "major"), ("middle", "minor")),
    Figure.IV: (("major", "middle"), ("middle", "minor")),
}

CONCLUSION_TEMPLATE: tuple[Role, Role] = ("minor", "major")

_MOOD_PATTERN = re.compile(r"^\s*([AEIO])([AEIO])([AEIO])\s*-\s*([1-4]|IV|III|II|I)\s*$", re.IGNORECASE)


class Mood(BaseModel):
    model_config = ConfigDict(frozen=True)

    figure: Figure
    major: Letter
    minor: Letter
    conclusion: Letter

    @property
    def letters(self) -> str:
        return f"{self.major.value}{self.minor.value}{self.conclusion.value}"

    @property
    def name(self) -> str:
        return f"{self.letters}-{self.figure.number}"

    @classmethod
    def parse(cls, text: str) -> "Mood":
        """Classical notation, e.g. "AAA-1" or "eio-IV"."""
        match = _MOOD_PATTERN.match(text)
        if match is None:
            raise UsageError(f"malformed mood {text!r}; expected e.g. 'AAA-1'")
        major, minor, conclusion, fig = match.groups()
        figure = Figure.from_number(int(fig)) if fig.isdigit() else Figure(fig.upper())
        return cls(
            figure=figure,
            major=Letter(major.upper()),
            minor=Letter(minor.upper()),
            conclusion=Letter(conclusion.upper()),
        )

    def __str__(self) -> str:
        return self.name


class TermAssignment(BaseModel):
    model_config = ConfigDict(frozen=True)

    major: str = "MT"
    minor: str = "NT"
    middle: str = "DT"

    @model_validator(mode="after")
    def _check_distinct(self) -> "TermAssignment":
        if len({self.major, self.minor, self.middle}) != 3:
            raise ValueError("major, minor and middle terms must be pairwise distinct")
        return self

    def term(self, role: Role) -> str:
        return getattr(self, role)


VALID_MOODS: dict[Figure, tuple[str, ...]] = {
    Figure.I: ("AAA", "EAE", "AII", "EIO", "AAI", "EAO"),
    Figure.II: ("EAE", "AEE", "EIO", "AOO", "EAO", "AEO"),
    Figure.III: ("AAI", "EAO", "IAI", "AII", "OAO", "EIO"),
    Figure.IV: ("AAI", "AEE", "IAI", "EAO", "EIO", "AEO"),
}


def _mood(figure: Figure, letters: str) -> Mood:
    return Mood(
        figure=figure,
        major=Letter(letters[0]),
        minor=Letter(letters[1]),
        conclusion=Letter(letters[2]),
    )


def valid_moods() -> list[Mood]:
    return [_mood(figure, letters) for figure, moods in VALID_MOODS.items() for letters in moods]


def all_moods() -> list[Mood]:
    """All 256 figure × letter³ candidates, in a fixed order."""
    letters = [letter.value for letter in Letter]
    return [
        _mood(figure, "".join(triple))
        for figure in Figure
        for triple in product(letters, repeat=3)
    ]


def instantiate(mood: Mood, terms: TermAssignment | None = None) -> Syllogism:
    terms = terms or TermAssignment()
    (major_s, major_p), (minor_s, minor_p) = mood.figure.templates

    def statement(letter: Letter, subject: Role, predicate: Role) -> Statement:
        return Statement(
            quantifier=Classical(letter=letter),
            subject=terms.term(subject),
            predicate=terms.term(predicate),
        )

    return Syllogism(
        premises=(
            statement(mood.major, major_s, major_p),
            statement(mood.minor, minor_s, minor_p),
        ),
        conclusion=statement(mood.conclusion, *CONCLUSION_TEMPLATE),
    )


def crisp_holds(letter: Letter, subject_set: Set, predicate_set: Set) -> bool:
    """Truth of a classical statement over finite sets, with existential import."""
    if not subject_set:
        raise EmptyTerm("classical statements require a nonempty subject term")

    if letter == Letter.A:
        return subject_set <= predicate_set
    if letter == Letter.E:
        return subject_set.isdisjoint(predicate_set)
    if letter == Letter.I:
        return not subject_set.isdisjoint(predicate_set)
    return not subject_set <= predicate_set
