"""Fuzzy syllogisms with quantifiers as fuzzy numbers.

Chaining patterns link A to C through B; the remaining patterns combine two
links that share a term:

    mc              Q1 As are Bs, Q2 Bs are Cs, all Bs are As  ->  ≥ Q1⊗Q2 As are Cs
    mpr             Q1 Bs are As, Q2 Bs are Cs                 ->  ≥ 0 ∨ (Q1⊕Q2⊖1) As are Cs
    intersection    Q1 As are Bs, Q2 (A and B)s are Cs         ->  ≥ Q1⊗Q2 As are (B and C)s
    antecedent-*    Q1 As are Cs, Q2 Bs are Cs                 ->  Q (A and/or B)s are Cs
    consequent-*    Q1 As are Bs, Q2 As are Cs                 ->  Q As are (B and/or C)s

Statements over fuzzy sets are evaluated with the ΣCount cardinality.
"""

import json
from enum import Enum
from pathlib import Path
from typing import TYPE_CHECKING, Callable

import numpy as np
import structlog
from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from syllogist.config import TNorm
from syllogist.dsl.render import render_operand
from syllogist.errors import ConstraintViolated, EmptySubject, MissingMixRatio, UsageError
from syllogist.numbers import (
    AlphaCutNumber,
    BoundedQuantifier,
    Interval,
    QuantifierKind,
    fz_add,
    fz_clamp_floor,
    fz_mul,
    fz_sub,
    iv_add,
    iv_clamp_floor,
    iv_hull,
    iv_max,
    iv_min,
    iv_scale,
    iv_span,
    iv_sub,
    membership_degree,
)

if TYPE_CHECKING:
    from structlog.stdlib import BoundLogger

logger: "BoundLogger" = structlog.get_logger()

PROVENANCE = "scheme: published; numbers: derived"


class ZadehPattern(str, Enum):
    MC = "mc"
    MPR = "mpr"
    INTERSECTION = "intersection"
    ANTECEDENT_AND = "antecedent-and"
    ANTECEDENT_OR = "antecedent-or"
    CONSEQUENT_AND = "consequent-and"
    CONSEQUENT_OR = "consequent-or"

    @property
    def is_chaining(self) -> bool:
        return self in (ZadehPattern.MC, ZadehPattern.MPR)

    @property
    def is_antecedent(self) -> bool:
        return self in (ZadehPattern.ANTECEDENT_AND, ZadehPattern.ANTECEDENT_OR)


class ZadehConclusion(BaseModel):
    model_config = ConfigDict(frozen=True)

    pattern: ZadehPattern
    quantifier: BoundedQuantifier
    expression: str | None = None
    provenance: str = PROVENANCE
    diagnostics: tuple[str, ...] = ()

    @property
    def value(self) -> AlphaCutNumber:
        """The conclusion with any "≥" widening applied."""
        return self.quantifier.effective()


def mc_conclude(q1: AlphaCutNumber, q2: AlphaCutNumber, constraint_ok: bool) -> BoundedQuantifier:
    if not constraint_ok:
        raise ConstraintViolated(
            "multiplicative chaining needs every B to be an A",
            constraint="B ⊆ A",
        )
    return BoundedQuantifier.at_least(fz_mul(q1, q2))


def mpr_conclude(q1: AlphaCutNumber, q2: AlphaCutNumber) -> BoundedQuantifier:
    """`q1` must already be the quantifier of "Bs are As"."""
    one = AlphaCutNumber.crisp_point(1.0, q1.resolution)
    return BoundedQuantifier.at_least(fz_clamp_floor(fz_sub(fz_add(q1, q2), one), 0.0))


def _conjunction(x: Interval, y: Interval) -> Interval:
    # Fréchet bounds on |B∩C|/|A| from |B|/|A| and |C|/|A|
    return iv_span(iv_clamp_floor(iv_sub(iv_add(x, y), Interval.point(1.0)), 0.0), iv_min(x, y))


def _disjunction(x: Interval, y: Interval) -> Interval:
    return iv_span(iv_max(x, y), iv_add(x, y, clamp=True))


def _weighted(mix: float) -> Callable[[Interval, Interval], Interval]:
    def mixed(x: Interval, y: Interval) -> Interval:
        return iv_add(iv_scale(x, mix), iv_scale(y, 1.0 - mix))

    return mixed


def combine(
    pattern: ZadehPattern,
    q1: AlphaCutNumber,
    q2: AlphaCutNumber,
    mix: float | None = None,
    point: bool = False,
) -> tuple[BoundedQuantifier, tuple[str, ...]]:
    """Non-chaining patterns, applied level by level on the α-cuts.

    `mix` is the share |A|/(|A|+|B|) of the first antecedent; it is only
    meaningful for disjoint antecedents. Returns the conclusion with its
    diagnostics.
    """
    if mix is not None and not 0.0 <= mix <= 1.0:
        raise UsageError("mix ratio must lie in [0, 1]", mix=mix)

    if pattern is ZadehPattern.INTERSECTION:
        return BoundedQuantifier.at_least(fz_mul(q1, q2)), ()
    if pattern is ZadehPattern.CONSEQUENT_AND:
        return BoundedQuantifier(core=q1.combine(q2, _conjunction)), ()
    if pattern is ZadehPattern.CONSEQUENT_OR:
        return BoundedQuantifier(core=q1.combine(q2, _disjunction)), ()

    if pattern is ZadehPattern.ANTECEDENT_AND:
        if point:
            raise MissingMixRatio("a conjunction of antecedents has no point value without |A∩B|", pattern=pattern.value)
        vacuous = AlphaCutNumber.crisp(Interval.unit(), q1.resolution)
        diagnostic = "the premises say nothing about A∩B; the conclusion is vacuous"
        logger.warning("Vacuous antecedent conjunction", pattern=pattern.value)
        return BoundedQuantifier(core=vacuous), (diagnostic,)

    if pattern is ZadehPattern.ANTECEDENT_OR:
        if mix is None:
            if point:
                raise MissingMixRatio("a point antecedent disjunction needs the mix ratio", pattern=pattern.value)
            return BoundedQuantifier(core=q1.combine(q2, iv_hull)), ("assumes A and B are disjoint",)
        return BoundedQuantifier(core=q1.combine(q2, _weighted(mix))), ("assumes A and B are disjoint",)

    raise UsageError(f"{pattern.value} is a chaining pattern", pattern=pattern.value)


def chaining_expression(pattern: ZadehPattern, q1: QuantifierKind, q2: QuantifierKind) -> str:
    a, b = render_operand(q1), render_operand(q2)
    if pattern is ZadehPattern.MPR:
        if a == b:
            return f"0 ∨ (2 {a} ⊖ 1)"
        return f"0 ∨ ({a} ⊕ {b} ⊖ 1)"
    return f"{a}⊗{b}"


def zadeh_conclude(
    pattern: ZadehPattern,
    q1: QuantifierKind,
    q2: QuantifierKind,
    cuts: tuple[AlphaCutNumber, AlphaCutNumber],
    constraint_ok: bool = False,
    mix: float | None = None,
    point: bool = False,
) -> ZadehConclusion:
    """Run a pattern on quantifiers already converted to α-cuts, keeping their printed forms."""
    x, y = cuts
    if pattern is ZadehPattern.MC:
        quantifier = mc_conclude(x, y, constraint_ok)
        return ZadehConclusion(pattern=pattern, quantifier=quantifier, expression=chaining_expression(pattern, q1, q2))
    if pattern is ZadehPattern.MPR:
        quantifier = mpr_conclude(x, y)
        return ZadehConclusion(pattern=pattern, quantifier=quantifier, expression=chaining_expression(pattern, q1, q2))

    quantifier, diagnostics = combine(pattern, x, y, mix=mix, point=point)
    expression = chaining_expression(pattern, q1, q2) if pattern is ZadehPattern.INTERSECTION else None
    return ZadehConclusion(pattern=pattern, quantifier=quantifier, expression=expression, diagnostics=diagnostics)


# ΣCount


class FuzzySet(BaseModel):
    model_config = ConfigDict(frozen=True)

    universe: tuple[str, ...]
    membership: tuple[float, ...]

    @model_validator(mode="after")
    def _check_degrees(self) -> "FuzzySet":
        if len(self.universe) != len(self.membership):
            raise ValueError("one membership degree per universe element is required")
        if len(set(self.universe)) != len(self.universe):
            raise ValueError("universe labels must be unique")
        if any(not 0.0 <= mu <= 1.0 for mu in self.membership):
            raise ValueError("membership degrees must lie in [0, 1]")
        return self

    @property
    def degrees(self) -> np.ndarray:
        return np.asarray(self.membership, dtype=float)


def _same_universe(a: FuzzySet, b: FuzzySet) -> None:
    if a.universe != b.universe:
        raise UsageError("fuzzy sets are defined over different universes")


def sigma_count(s: FuzzySet) -> float:
    return float(s.degrees.sum())


def intersect(a: FuzzySet, b: FuzzySet, tnorm: TNorm = "min") -> FuzzySet:
    _same_universe(a, b)
    degrees = np.minimum(a.degrees, b.degrees) if tnorm == "min" else a.degrees * b.degrees
    return FuzzySet(universe=a.universe, membership=tuple(float(d) for d in degrees))


def statement_truth(
    q: QuantifierKind,
    subject: FuzzySet,
    predicate: FuzzySet,
    tnorm: TNorm = "min",
    absolute: bool = False,
) -> float:
    """Degree to which "Q subjects are predicates" holds.

    Proportional quantifiers are applied to ΣCount(S∩P)/ΣCount(S), absolute
    ones to ΣCount(S∩P).
    """
    overlap = sigma_count(intersect(subject, predicate, tnorm))
    if absolute:
        return membership_degree(q, overlap)
    size = sigma_count(subject)
    if size == 0.0:
        raise EmptySubject("the subject has ΣCount 0")
    return membership_degree(q, overlap / size)


def check_inclusion(b: FuzzySet, a: FuzzySet) -> bool:
    """μ_B(u) ≤ μ_A(u) for every element of the universe."""
    _same_universe(a, b)
    return bool(np.all(b.degrees <= a.degrees))


class FuzzyData(BaseModel):
    """Named fuzzy sets over one universe, as read from a data file."""

    model_config = ConfigDict(frozen=True)

    universe: tuple[str, ...]
    sets: dict[str, tuple[float, ...]]

    @model_validator(mode="after")
    def _check_sets(self) -> "FuzzyData":
        for name, degrees in self.sets.items():
            try:
                FuzzySet(universe=self.universe, membership=degrees)
            except ValidationError as e:
                raise ValueError(f"set {name!r}: {e.errors()[0]['msg']}") from e
        return self

    def get(self, name: str) -> FuzzySet:
        if name not in self.sets:
            raise UsageError("no fuzzy set with this name in the data file", name=name)
        return FuzzySet(universe=self.universe, membership=self.sets[name])


def load_fuzzy_data(path: str | Path) -> FuzzyData:
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = json.load(f)
        data = FuzzyData.model_validate(raw)
    except (OSError, ValueError) as e:
        raise UsageError(f"cannot read fuzzy data: {e}", path=str(path)) from e
    logger.debug("Fuzzy data loaded", path=str(path), sets=len(data.sets), universe=len(data.universe))
    return data
