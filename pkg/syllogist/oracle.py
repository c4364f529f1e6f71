"""Exhaustive finite-model ground truth over the eight Venn atoms of three term sets.

Atom ``4a + 2b + c`` holds the elements whose membership in (A, B, C) is
(a, b, c). Every closed form in the frameworks is validated against the
models enumerated here.
"""

from fractions import Fraction
from functools import lru_cache
from typing import TYPE_CHECKING, Iterator, Sequence

import structlog
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from syllogist.dsl.statement import Statement, Syllogism
from syllogist.errors import (
    DslSyntaxError,
    ModelLimitExceeded,
    PatternArityError,
    Unsatisfiable,
    UndefinedProportion,
    UsageError,
)
from syllogist.frameworks.aristotle import Mood, TermAssignment, crisp_holds, instantiate
from syllogist.numbers import Classical, ClassicalLetter, Interval

if TYPE_CHECKING:
    from structlog.stdlib import BoundLogger

logger: "BoundLogger" = structlog.get_logger()

ATOM_COUNT = 8
TERM_LETTERS = ("A", "B", "C")
TERM_BITS = {"A": 4, "B": 2, "C": 1}

# Classical statements only see which atoms are inhabited; 8 elements realise every pattern.
CONCLUSIVE_MOOD_BUDGET = ATOM_COUNT


def atom_label(atom: int) -> str:
    return "&".join(
        letter if atom & bit else f"~{letter}" for letter, bit in TERM_BITS.items()
    )


def parse_set_expression(text: str) -> frozenset[int]:
    """Atoms of a conjunction of possibly negated terms, e.g. "A&~B" or "C∩A"."""
    atoms = frozenset(range(ATOM_COUNT))
    expecting_literal = True
    negated = False
    seen_literal = False

    for position, char in enumerate(text):
        if char.isspace():
            continue
        if expecting_literal:
            if char in "~¬!":
                negated = not negated
                continue
            letter = char.upper()
            if letter not in TERM_BITS:
                raise DslSyntaxError(f"expected a term letter A, B or C in {text!r}", position=position)
            bit = TERM_BITS[letter]
            atoms = atoms & {a for a in range(ATOM_COUNT) if bool(a & bit) != negated}
            expecting_literal, negated, seen_literal = False, False, True
        elif char in "&∩":
            expecting_literal = True
        else:
            raise DslSyntaxError(f"expected '&' in {text!r}", position=position)

    if not seen_literal or expecting_literal:
        raise DslSyntaxError(f"incomplete set expression {text!r}", position=len(text))
    return atoms


class VennModel(BaseModel):
    model_config = ConfigDict(frozen=True)

    atoms: tuple[int, int, int, int, int, int, int, int]

    @field_validator("atoms")
    @classmethod
    def _check_atoms(cls, value: tuple[int, ...]) -> tuple[int, ...]:
        if any(count < 0 for count in value):
            raise ValueError("atom cardinalities must be non-negative")
        return value

    @classmethod
    def from_presence(cls, mask: int) -> "VennModel":
        """One element in each atom whose bit is set in `mask`."""
        return cls(atoms=tuple(1 if mask >> atom & 1 else 0 for atom in range(ATOM_COUNT)))

    @property
    def total(self) -> int:
        return sum(self.atoms)

    def cardinality(self, atoms: frozenset[int]) -> int:
        return sum(self.atoms[a] for a in atoms)

    def term_size(self, letter: str) -> int:
        bit = TERM_BITS[letter]
        return sum(count for atom, count in enumerate(self.atoms) if atom & bit)

    @property
    def has_nonempty_terms(self) -> bool:
        return all(self.term_size(letter) > 0 for letter in TERM_LETTERS)

    def proportion(self, numerator: str, denominator: str) -> Fraction:
        den_atoms = parse_set_expression(denominator)
        den = self.cardinality(den_atoms)
        if den == 0:
            raise UndefinedProportion("denominator set is empty", denominator=denominator)
        return Fraction(self.cardinality(parse_set_expression(numerator) & den_atoms), den)

    def term_sets(self) -> dict[str, frozenset[tuple[int, int]]]:
        """Concrete elements (atom, i) of each term set."""
        return {
            letter: frozenset(
                (atom, i)
                for atom, count in enumerate(self.atoms)
                if atom & bit
                for i in range(count)
            )
            for letter, bit in TERM_BITS.items()
        }

    def describe(self) -> dict[str, int]:
        return {atom_label(atom): count for atom, count in enumerate(self.atoms) if count}


def enumerate_models(total_max: int, require_nonempty: bool = False) -> Iterator[VennModel]:
    """Every atom vector with sum <= total_max, lexicographically by atom."""
    if require_nonempty and total_max < 1:
        raise UsageError("nonempty terms need a budget of at least 1", total_max=total_max)

    counts = [0] * ATOM_COUNT

    def place(atom: int, remaining: int) -> Iterator[VennModel]:
        if atom == ATOM_COUNT:
            model = VennModel(atoms=tuple(counts))
            if not require_nonempty or model.has_nonempty_terms:
                yield model
            return
        for value in range(remaining + 1):
            counts[atom] = value
            yield from place(atom + 1, remaining - value)
        counts[atom] = 0

    yield from place(0, total_max)


class Validity(BaseModel):
    model_config = ConfigDict(frozen=True)

    valid: bool
    total_max: int
    counterexample: VennModel | None = None

    @property
    def conclusive(self) -> bool:
        return self.valid is False or self.total_max >= CONCLUSIVE_MOOD_BUDGET


@lru_cache(maxsize=None)
def _holding_masks(letter: str, subject_bit: int, predicate_bit: int) -> frozenset[int]:
    """Presence masks in which the classical statement is true (subject inhabited)."""
    masks = set()
    for mask in range(1 << ATOM_COUNT):
        present = [atom for atom in range(ATOM_COUNT) if mask >> atom & 1]
        subject = frozenset(a for a in present if a & subject_bit)
        if not subject:
            continue
        predicate = frozenset(a for a in present if a & predicate_bit)
        if crisp_holds(ClassicalLetter(letter), subject, predicate):
            masks.add(mask)
    return frozenset(masks)


def _nonempty_terms_mask(mask: int) -> bool:
    return all(
        any(mask >> atom & 1 for atom in range(ATOM_COUNT) if atom & bit)
        for bit in TERM_BITS.values()
    )


def _term_letters(statements: Sequence[Statement]) -> dict[str, str]:
    letters: dict[str, str] = {}
    for statement in statements:
        for term in (statement.subject, statement.predicate):
            if term not in letters:
                if len(letters) == len(TERM_LETTERS):
                    raise PatternArityError("the oracle models at most three terms", term=term)
                letters[term] = TERM_LETTERS[len(letters)]
    return letters


def _statement_masks(statement: Statement, letters: dict[str, str]) -> frozenset[int]:
    if not isinstance(statement.quantifier, Classical):
        raise UsageError(
            "only classical statements can be checked for validity",
            quantifier=statement.quantifier.kind,
        )
    return _holding_masks(
        statement.quantifier.letter.value,
        TERM_BITS[letters[statement.subject]],
        TERM_BITS[letters[statement.predicate]],
    )


def syllogism_valid(
    premises: Sequence[Statement],
    conclusion: Statement,
    total_max: int = CONCLUSIVE_MOOD_BUDGET,
    require_nonempty: bool = True,
    terms: Sequence[str] | None = None,
) -> Validity:
    """Whether every model of the premises with at most `total_max` elements satisfies the conclusion.

    Terms map to A, B, C in the order given by `terms`, or else in order of
    first appearance. A classical statement depends only on which atoms are
    inhabited, so models are enumerated by presence mask and the
    counterexample is the smallest such model.
    """
    if terms is not None:
        if len(terms) > len(TERM_LETTERS):
            raise PatternArityError("the oracle models at most three terms", terms=list(terms))
        letters = dict(zip(terms, TERM_LETTERS))
        used = {t for s in [*premises, conclusion] for t in (s.subject, s.predicate)}
        if unknown := sorted(used - letters.keys()):
            raise UsageError("statement uses a term outside the given terms", terms=unknown)
    else:
        letters = _term_letters([*premises, conclusion])

    candidates = frozenset(range(1 << ATOM_COUNT))
    for premise in premises:
        candidates &= _statement_masks(premise, letters)
    counter_masks = [
        mask
        for mask in candidates - _statement_masks(conclusion, letters)
        if mask.bit_count() <= total_max and (not require_nonempty or _nonempty_terms_mask(mask))
    ]
    if not counter_masks:
        return Validity(valid=True, total_max=total_max)

    mask = min(counter_masks, key=lambda m: (m.bit_count(), m))
    return Validity(valid=False, total_max=total_max, counterexample=VennModel.from_presence(mask))


def mood_valid(mood: Mood, total_max: int = CONCLUSIVE_MOOD_BUDGET) -> Validity:
    """Mood validity under existential import; the minor term is A, the middle B, the major C."""
    if total_max < 3:
        raise UsageError("mood checking needs a budget of at least 3", total_max=total_max)
    syllogism: Syllogism = instantiate(mood, TermAssignment(minor="A", middle="B", major="C"))
    assert syllogism.conclusion is not None
    return syllogism_valid(syllogism.premises, syllogism.conclusion, total_max, terms=TERM_LETTERS)


class Proportion(BaseModel):
    """|numerator ∩ denominator| / |denominator| over set expressions."""

    model_config = ConfigDict(frozen=True)

    numerator: str
    denominator: str

    @field_validator("numerator", "denominator")
    @classmethod
    def _check_expression(cls, value: str) -> str:
        parse_set_expression(value)
        return value

    @model_validator(mode="after")
    def _check_denominator(self) -> "Proportion":
        if not self.denominator_atoms:
            raise ValueError(f"denominator {self.denominator!r} is empty in every model")
        return self

    @property
    def numerator_atoms(self) -> frozenset[int]:
        return parse_set_expression(self.numerator) & self.denominator_atoms

    @property
    def denominator_atoms(self) -> frozenset[int]:
        return parse_set_expression(self.denominator)

    def render(self) -> str:
        return f"|{self.numerator} ∩ {self.denominator}| / |{self.denominator}|"


class ProportionConstraint(Proportion):
    bounds: Interval

    def render(self) -> str:
        return f"{super().render()} ∈ {self.bounds.render()}"


def _exact(value: float) -> Fraction:
    # Decimal inputs are read as the decimal they were written as.
    return Fraction(repr(float(value)))


class _CompiledConstraint:
    __slots__ = ("num", "den", "low", "high", "low_open", "high_open", "depth")

    def __init__(self, constraint: ProportionConstraint, position: dict[int, int]) -> None:
        self.num = [position[a] for a in sorted(constraint.numerator_atoms)]
        self.den = [position[a] for a in sorted(constraint.denominator_atoms)]
        low, high = _exact(constraint.bounds.lower), _exact(constraint.bounds.upper)
        self.low = (low.numerator, low.denominator)
        self.high = (high.numerator, high.denominator)
        self.low_open = constraint.bounds.lower_open
        self.high_open = constraint.bounds.upper_open
        self.depth = max(self.den)

    def admits(self, counts: list[int]) -> bool:
        den = sum(counts[p] for p in self.den)
        if den == 0:
            return False
        num = sum(counts[p] for p in self.num)
        lp, lq = self.low
        hp, hq = self.high
        above = num * lq > lp * den if self.low_open else num * lq >= lp * den
        below = num * hq < hp * den if self.high_open else num * hq <= hp * den
        return above and below


class AttainedRange(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lower: Fraction
    upper: Fraction
    admissible: int
    total_max: int
    lower_witness: VennModel
    upper_witness: VennModel

    @property
    def interval(self) -> Interval:
        return Interval(lower=float(self.lower), upper=float(self.upper))


def _atom_order(constraints: Sequence[ProportionConstraint], target: Proportion) -> list[int]:
    """Relevant atoms, ordered so that small constraints are complete early."""
    order: list[int] = []
    for item in sorted(constraints, key=lambda c: (len(c.denominator_atoms), c.denominator)):
        order.extend(a for a in sorted(item.denominator_atoms) if a not in order)
    order.extend(a for a in sorted(target.denominator_atoms) if a not in order)
    return order


def attained_range(
    constraints: Sequence[ProportionConstraint],
    target: Proportion,
    total_max: int = 60,
    model_limit: int = 2_000_000,
) -> AttainedRange:
    """[min, max] of the target proportion over all admissible models, in exact arithmetic.

    Only atoms inside some denominator influence any proportion, so the
    others are held at zero. Constraints are checked as soon as all their
    atoms are placed. Every model up to `total_max` elements is visited;
    more than `model_limit` admissible models raises ModelLimitExceeded.
    """
    order = _atom_order(constraints, target)
    position = {atom: i for i, atom in enumerate(order)}
    compiled = [_CompiledConstraint(c, position) for c in constraints]
    by_depth: dict[int, list[_CompiledConstraint]] = {}
    for item in compiled:
        by_depth.setdefault(item.depth, []).append(item)

    target_num = [position[a] for a in sorted(target.numerator_atoms)]
    target_den = [position[a] for a in sorted(target.denominator_atoms)]
    logger.debug("Enumerating oracle models", atoms=len(order), total_max=total_max, constraints=len(compiled))

    counts = [0] * len(order)
    state = {"admissible": 0, "defined": 0}
    best: dict[str, tuple[int, int, tuple[int, ...]]] = {}

    def record() -> None:
        state["admissible"] += 1
        if state["admissible"] > model_limit:
            raise ModelLimitExceeded(
                "too many admissible models; lower the oracle budget or raise the model limit",
                total_max=total_max,
                model_limit=model_limit,
            )
        den = sum(counts[p] for p in target_den)
        if den == 0:
            return
        state["defined"] += 1
        num = sum(counts[p] for p in target_num)
        low = best.get("low")
        if low is None or num * low[1] < low[0] * den:
            best["low"] = (num, den, tuple(counts))
        high = best.get("high")
        if high is None or num * high[1] > high[0] * den:
            best["high"] = (num, den, tuple(counts))

    def place(depth: int, remaining: int) -> None:
        if depth == len(order):
            record()
            return
        checks = by_depth.get(depth, ())
        for value in range(remaining + 1):
            counts[depth] = value
            if all(check.admits(counts) for check in checks):
                place(depth + 1, remaining - value)
        counts[depth] = 0

    place(0, total_max)

    if state["admissible"] == 0:
        raise Unsatisfiable("no model satisfies the constraints", total_max=total_max)
    if state["defined"] == 0:
        raise UndefinedProportion(
            "the target denominator is empty in every admissible model",
            denominator=target.denominator,
        )

    def to_model(values: tuple[int, ...]) -> VennModel:
        atoms = [0] * ATOM_COUNT
        for atom, i in position.items():
            atoms[atom] = values[i]
        return VennModel(atoms=tuple(atoms))

    low_num, low_den, low_counts = best["low"]
    high_num, high_den, high_counts = best["high"]
    result = AttainedRange(
        lower=Fraction(low_num, low_den),
        upper=Fraction(high_num, high_den),
        admissible=state["admissible"],
        total_max=total_max,
        lower_witness=to_model(low_counts),
        upper_witness=to_model(high_counts),
    )
    logger.debug(
        "Oracle range attained",
        lower=str(result.lower),
        upper=str(result.upper),
        admissible=result.admissible,
    )
    return result
