"""Which classical moods can be carried by each fuzzy syllogistic pattern.

A mood is compatible with a pattern when its premises fill the pattern's
slots and the conclusion the pattern computes entails the mood's own
conclusion. Only the chaining patterns are analysed; the symmetric ones
combine separately established links and cannot host a mood at all.
"""

from enum import Enum
from typing import TYPE_CHECKING, Iterable

import structlog
from pydantic import BaseModel, ConfigDict

from syllogist.config import SearchOptions
from syllogist.dsl.statement import Statement
from syllogist.errors import SyllogistError
from syllogist.frameworks.aristotle import (
    VALID_MOODS,
    Figure,
    Mood,
    Role,
    TermAssignment,
    instantiate,
)
from syllogist.frameworks.dubois import PatternIInput, pattern1_search
from syllogist.frameworks.zadeh import mc_conclude, mpr_conclude
from syllogist.numbers import (
    DEFAULT_ALPHA_RESOLUTION,
    AlphaCutNumber,
    Classical,
    Imprecise,
    Interval,
    iv_entails,
    is_symmetric,
    make_interval,
)
from syllogist.oracle import CONCLUSIVE_MOOD_BUDGET, Proportion, ProportionConstraint, attained_range, syllogism_valid

if TYPE_CHECKING:
    from structlog.stdlib import BoundLogger

logger: "BoundLogger" = structlog.get_logger()

Position = tuple[str, str]


class PatternId(str, Enum):
    PATTERN_I = "dubois1"
    MC = "mc"
    MPR = "mpr"
    PATTERN_II = "dubois2"
    PATTERN_III = "dubois3"
    INTERSECTION = "intersection"
    ANTECEDENT = "antecedent"
    CONSEQUENT = "consequent"

    @property
    def analysed(self) -> bool:
        return self in ANALYSED_PATTERNS


ANALYSED_PATTERNS = (PatternId.PATTERN_I, PatternId.MC, PatternId.MPR)


class Reason(str, Enum):
    FIGURE_MISMATCH = "FigureMismatch"
    MISSING_PREMISE = "MissingPremise"
    NON_SYMMETRIC_REVERSAL = "NonSymmetricReversal"
    CONCLUSION_NOT_ENTAILED = "ConclusionNotEntailed"
    COMPATIBLE = "Compatible"
    STRUCTURALLY_EXCLUDED = "StructurallyExcluded"


# Where the middle term sits: (in the major premise, in the minor premise).
CHAINING_MIDDLE: Position = ("subject", "predicate")

MINOR_TERMS = TermAssignment(minor="A", middle="B", major="C")

EIO_NOTE = (
    "MPR on EIO-1: the reversed minor premise gives the bound 0 ∨ (some ⊕ no ⊖ 1) = 0; "
    "read as '≥ 0' it widens to [0, 1], which does not entail 'not all' = [0, 1). "
    "The mood is reported incompatible even though the scalar bound alone equals 0."
)

PATTERN1_EIO_NOTE = (
    "Pattern I on EIO-1: the converse of 'no Bs are Cs' is swept over (0, 1] although the premise "
    "forces it to 0, so the computed [0, 0] comes from premises no model satisfies; "
    "the finite-model oracle refutes it while the table still answers Yes."
)


def middle_position(figure: Figure) -> Position:
    def where(template: tuple[Role, Role]) -> str:
        return "subject" if template[0] == "middle" else "predicate"

    major, minor = figure.templates
    return where(major), where(minor)


def figure_compatible(pattern: PatternId, figure: Figure) -> bool:
    """The pattern places the middle term where the figure does."""
    return pattern.analysed and middle_position(figure) == CHAINING_MIDDLE


class CompatVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    pattern: PatternId
    mood: Mood
    reason: Reason
    conclusion: Interval | None = None
    expected: Interval | None = None
    detail: str | None = None
    confirmed: bool | None = None

    @property
    def compatible(self) -> bool:
        return self.reason is Reason.COMPATIBLE

    @property
    def answer(self) -> str:
        return "Yes" if self.compatible else "No"


class CompatReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    verdicts: tuple[CompatVerdict, ...]
    excluded: tuple[PatternId, ...] = ()
    notes: tuple[str, ...] = ()

    def row(self, pattern: PatternId, figure: Figure = Figure.I) -> list[CompatVerdict]:
        return [v for v in self.verdicts if v.pattern is pattern and v.mood.figure is figure]

    def verdict(self, pattern: PatternId, mood: Mood) -> CompatVerdict:
        for v in self.verdicts:
            if v.pattern is pattern and v.mood == mood:
                return v
        raise KeyError(f"no verdict for {pattern.value} on {mood.name}")


def _premises(mood: Mood) -> tuple[Statement, Statement]:
    """(major, minor) premises with the minor term as A, the middle as B, the major as C."""
    syllogism = instantiate(mood, MINOR_TERMS)
    major, minor = syllogism.premises
    return major, minor


def _interval(letter_statement: Statement) -> Interval:
    quantifier = letter_statement.quantifier
    assert isinstance(quantifier, Classical)
    return quantifier.interval


def _pattern1(mood: Mood, options: SearchOptions) -> Interval:
    major, minor = _premises(mood)
    unknown = Imprecise(interval=make_interval(0.0, 1.0, lower_open=True))
    pattern = PatternIInput(
        q1=minor.quantifier,
        q1_conv=unknown,
        q2=major.quantifier,
        q2_conv=unknown,
    )
    return pattern1_search(pattern, options).conclusion


def _inclusion_entailed(mood: Mood) -> bool:
    """Whether the premises force every B to be an A."""
    major, minor = _premises(mood)
    inclusion = Statement(quantifier=Classical(letter="A"), subject="B", predicate="A")
    return syllogism_valid([major, minor], inclusion, terms=("A", "B", "C")).valid


def _crisp_cut(interval: Interval, resolution: int) -> AlphaCutNumber:
    return AlphaCutNumber.crisp(interval, resolution)


def check_mood(
    pattern: PatternId,
    mood: Mood,
    options: SearchOptions | None = None,
    resolution: int = DEFAULT_ALPHA_RESOLUTION,
    symmetric_labels: Iterable[str] = (),
) -> CompatVerdict:
    options = options or SearchOptions()
    expected = mood.conclusion.interval

    def verdict(reason: Reason, conclusion: Interval | None = None, detail: str | None = None) -> CompatVerdict:
        return CompatVerdict(
            pattern=pattern,
            mood=mood,
            reason=reason,
            conclusion=conclusion,
            expected=expected,
            detail=detail,
        )

    if not pattern.analysed:
        return verdict(Reason.STRUCTURALLY_EXCLUDED)
    if not figure_compatible(pattern, mood.figure):
        return verdict(Reason.FIGURE_MISMATCH, detail=f"middle term as {'/'.join(middle_position(mood.figure))}")

    major, minor = _premises(mood)
    if pattern is PatternId.PATTERN_I:
        conclusion = _pattern1(mood, options)
    elif pattern is PatternId.MC:
        if not _inclusion_entailed(mood):
            return verdict(Reason.MISSING_PREMISE, detail="all Bs are As")
        cut = mc_conclude(
            _crisp_cut(_interval(minor), resolution),
            _crisp_cut(_interval(major), resolution),
            constraint_ok=True,
        )
        conclusion = cut.effective().support
    else:
        if not is_symmetric(minor.quantifier, symmetric_labels):
            return verdict(Reason.NON_SYMMETRIC_REVERSAL, detail=f"'{mood.minor.word}' cannot be reversed")
        # A symmetric quantifier keeps its interval when subject and predicate swap.
        cut = mpr_conclude(
            _crisp_cut(_interval(minor), resolution),
            _crisp_cut(_interval(major), resolution),
        )
        conclusion = cut.effective().support

    if not iv_entails(conclusion, expected, options.tolerance):
        return verdict(Reason.CONCLUSION_NOT_ENTAILED, conclusion=conclusion)
    return verdict(Reason.COMPATIBLE, conclusion=conclusion)


def oracle_confirms(verdict: CompatVerdict, total_max: int = CONCLUSIVE_MOOD_BUDGET) -> bool:
    """Every finite model of the mood's premises has its A→C proportion inside the computed conclusion."""
    if verdict.conclusion is None:
        raise ValueError("only verdicts with a computed conclusion can be confirmed")
    major, minor = _premises(verdict.mood)
    constraints = [
        ProportionConstraint(numerator="B", denominator="A", bounds=_interval(minor)),
        ProportionConstraint(numerator="C", denominator="B", bounds=_interval(major)),
    ]
    attained = attained_range(constraints, Proportion(numerator="C", denominator="A"), total_max=total_max)
    return iv_entails(attained.interval, verdict.conclusion)


def is_stable(pattern: PatternId, mood: Mood, options: SearchOptions | None = None, factor: int = 10) -> bool:
    """The verdict does not change when the converse grid is refined."""
    options = options or SearchOptions()
    step = options.converse_step or options.sweep_step
    refined = options.model_copy(update={"converse_step": step / factor})
    return check_mood(pattern, mood, options).reason == check_mood(pattern, mood, refined).reason


def reproduce_tables(
    options: SearchOptions | None = None,
    resolution: int = DEFAULT_ALPHA_RESOLUTION,
    confirm_budget: int | None = None,
) -> CompatReport:
    """Verdicts of every analysed pattern on all 24 valid moods.

    With `confirm_budget`, each compatible verdict is checked against the
    finite-model oracle.
    """
    verdicts: list[CompatVerdict] = []
    for pattern in ANALYSED_PATTERNS:
        for figure, moods in VALID_MOODS.items():
            for letters in moods:
                mood = Mood.parse(f"{letters}-{figure.number}")
                try:
                    v = check_mood(pattern, mood, options, resolution)
                except SyllogistError as e:
                    logger.error("Mood check failed", pattern=pattern.value, mood=mood.name, error=str(e))
                    raise
                if confirm_budget is not None and v.compatible:
                    v = v.model_copy(update={"confirmed": oracle_confirms(v, confirm_budget)})
                    if not v.confirmed:
                        logger.warning("Oracle disagrees with a compatible verdict", pattern=pattern.value, mood=mood.name)
                verdicts.append(v)

    excluded = tuple(p for p in PatternId if not p.analysed)
    logger.debug("Compatibility tables reproduced", verdicts=len(verdicts), excluded=len(excluded))
    return CompatReport(verdicts=tuple(verdicts), excluded=excluded, notes=(EIO_NOTE, PATTERN1_EIO_NOTE))
