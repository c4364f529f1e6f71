from typing import Annotated, Iterable, Union

from pydantic import Field

from syllogist.errors import MismatchedAlphaGrid
from .fuzzy_number import (
    DEFAULT_ALPHA_RESOLUTION,
    AlphaCutNumber,
    Composed,
    Fuzzy,
    TrapezoidalQuantifier,
)
from .interval import Classical, Imprecise, Interval, Precise

QuantifierKind = Annotated[
    Union[Precise, Imprecise, Classical, Fuzzy, Composed],
    Field(discriminator="kind"),
]

CrispQuantifier = Precise | Imprecise | Classical


def is_crisp(quantifier: QuantifierKind) -> bool:
    return isinstance(quantifier, (Precise, Imprecise, Classical))


def crisp_interval(quantifier: QuantifierKind) -> Interval:
    if isinstance(quantifier, (Precise, Imprecise, Classical)):
        return quantifier.interval
    raise TypeError(f"{quantifier.kind} quantifier has no single interval")


def support_kernel(quantifier: QuantifierKind) -> tuple[Interval, Interval]:
    """SUP and KER; a crisp quantifier has SUP = KER."""
    if isinstance(quantifier, (Precise, Imprecise, Classical)):
        interval = quantifier.interval
        return interval, interval
    if isinstance(quantifier, Fuzzy):
        return quantifier.trapezoid.support, quantifier.trapezoid.kernel
    return quantifier.value.support, quantifier.value.kernel


def to_trapezoid(quantifier: QuantifierKind) -> TrapezoidalQuantifier:
    if isinstance(quantifier, Fuzzy):
        return quantifier.trapezoid
    if isinstance(quantifier, Composed):
        return quantifier.value.as_trapezoid()
    return TrapezoidalQuantifier.crisp(quantifier.interval)


def to_alpha_cuts(
    quantifier: QuantifierKind,
    resolution: int = DEFAULT_ALPHA_RESOLUTION,
) -> AlphaCutNumber:
    if isinstance(quantifier, (Precise, Imprecise, Classical)):
        return AlphaCutNumber.crisp(quantifier.interval, resolution)
    if isinstance(quantifier, Fuzzy):
        return AlphaCutNumber.from_trapezoid(quantifier.trapezoid, resolution)
    if quantifier.value.resolution != resolution:
        raise MismatchedAlphaGrid(
            "composed quantifier was built on another α grid",
            expression=quantifier.expression,
            resolution=quantifier.value.resolution,
        )
    return quantifier.value


def membership_degree(quantifier: QuantifierKind, value: float) -> float:
    """μ_Q(value): 0/1 for crisp quantifiers, the trapezoid for fuzzy ones."""
    if isinstance(quantifier, (Precise, Imprecise, Classical)):
        return 1.0 if quantifier.interval.contains(value) else 0.0
    if isinstance(quantifier, Fuzzy):
        return float(quantifier.trapezoid.membership(value))
    degree = 0.0
    for level in quantifier.value.levels:
        if level.alpha > 0 and level.cut.closure_contains(value):
            degree = level.alpha
    return degree


def is_symmetric(quantifier: QuantifierKind, declared: Iterable[str] = ()) -> bool:
    """Whether "Q As are Bs" may be read as "Q Bs are As"."""
    if isinstance(quantifier, Classical):
        return quantifier.letter.symmetric
    return quantifier.label is not None and quantifier.label.lower() in {d.lower() for d in declared}
