"""Interval syllogistics: Pattern I closed forms and Patterns II/III by attained bounds.

Pattern I links A to C through B:

    Q1 As are Bs      Q1' Bs are As
    Q2 Bs are Cs      Q2' Cs are Bs
    -------------------------------
    Q  As are Cs      Q'  Cs are As

Imprecise premises are handled by minimising the lower-bound expression and
maximising the upper-bound expression over the premise box, fuzzy premises
by doing so independently on supports and kernels.
"""

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable, ClassVar, Literal

import numpy as np
import structlog
from pydantic import BaseModel, ConfigDict

from syllogist.config import OracleOptions, SearchOptions, UpperBoundForm
from syllogist.errors import (
    InconsistentPremises,
    KernelNotInSupport,
    MalformedInterval,
    PatternArityError,
    ZeroConverse,
)
from syllogist.numbers import (
    DEFAULT_TOLERANCE,
    Interval,
    QuantifierKind,
    TrapezoidalQuantifier,
    crisp_interval,
    iv_entails,
    is_crisp,
    make_interval,
    quantifier_from_interval,
    support_kernel,
)
from syllogist.oracle import AttainedRange, Proportion, ProportionConstraint, attained_range

if TYPE_CHECKING:
    from structlog.stdlib import BoundLogger

logger: "BoundLogger" = structlog.get_logger()

Version = Literal["general", "particular"]
Mode = Literal["min", "max"]

PATTERN1_SLOTS = ("q1", "q1_conv", "q2", "q2_conv")
CONVERSE_SLOTS = frozenset({"q1_conv", "q2_conv"})


def _lower_bound(q1: np.ndarray, q1c: np.ndarray, q2: np.ndarray, q2c: np.ndarray) -> np.ndarray:
    return q1 * np.maximum(0.0, 1.0 - (1.0 - q2) / q1c)


def _upper_bound(form: UpperBoundForm) -> Callable[..., np.ndarray]:
    def upper(q1: np.ndarray, q1c: np.ndarray, q2: np.ndarray, q2c: np.ndarray) -> np.ndarray:
        chain = q1 * q2 / (q1c * q2c)
        if form == "printed":
            fourth = chain * (1.0 - q2c + q1)
        else:
            # |A∩C| <= |A∩B| + |C∖B|, divided through by |A|
            fourth = chain * (1.0 - q2c) + q1
        direct = 1.0 - q1 + q1 * q2 / q1c
        return np.minimum(np.minimum(1.0, direct), np.minimum(chain, fourth))

    return upper


def _require_proportion(name: str, interval: Interval) -> None:
    if not interval.is_proportion:
        raise MalformedInterval("premise quantifier is not a proportion", slot=name, interval=interval.render())


def pattern1_precise(
    q1: float,
    q1c: float,
    q2: float,
    q2c: float,
    tolerance: float = DEFAULT_TOLERANCE,
    upper_bound_form: UpperBoundForm = "derived",
) -> Interval:
    for name, value in zip(PATTERN1_SLOTS, (q1, q1c, q2, q2c)):
        if not 0.0 <= value <= 1.0:
            raise MalformedInterval("premise proportion outside [0, 1]", slot=name, value=value)
    if q1c == 0.0 or q2c == 0.0:
        raise ZeroConverse("converse proportions must be positive", q1_conv=q1c, q2_conv=q2c)

    args = tuple(np.float64(v) for v in (q1, q1c, q2, q2c))
    lower = float(_lower_bound(*args))
    upper = float(_upper_bound(upper_bound_form)(*args))
    if lower > upper + tolerance:
        raise InconsistentPremises(
            "lower bound exceeds upper bound",
            lower=lower,
            upper=upper,
            upper_bound_form=upper_bound_form,
        )
    return make_interval(min(lower, upper), upper)


class PatternIInput(BaseModel):
    """Quantifiers of "As are Bs", "Bs are As", "Bs are Cs" and "Cs are Bs"."""

    model_config = ConfigDict(frozen=True)

    q1: QuantifierKind
    q1_conv: QuantifierKind
    q2: QuantifierKind
    q2_conv: QuantifierKind

    @property
    def slots(self) -> dict[str, QuantifierKind]:
        return {name: getattr(self, name) for name in PATTERN1_SLOTS}

    @property
    def is_crisp(self) -> bool:
        return all(is_crisp(q) for q in self.slots.values())

    def converse(self) -> "PatternIInput":
        """The same premises read from C to A, whose conclusion is "Q' Cs are As"."""
        return PatternIInput(q1=self.q2_conv, q1_conv=self.q2, q2=self.q1_conv, q2_conv=self.q1)


@dataclass(frozen=True)
class _SlotRange:
    low: float
    high: float
    low_open: bool
    high_open: bool
    step: float

    @classmethod
    def of(cls, name: str, interval: Interval, step: float, floor: float) -> "_SlotRange":
        _require_proportion(name, interval)
        low, low_open = interval.lower, interval.lower_open
        if name in CONVERSE_SLOTS and low == 0.0:
            if not low_open:
                raise ZeroConverse("converse interval includes 0", slot=name, interval=interval.render())
            # (0, u]: sweep from a positive floor that is itself admissible
            low, low_open = min(floor, interval.upper), False
        return cls(low=low, high=interval.upper, low_open=low_open, high_open=interval.upper_open, step=step)

    @property
    def is_point(self) -> bool:
        return self.low == self.high

    def admissible(self, values: np.ndarray) -> np.ndarray:
        ok = np.ones(values.shape, dtype=bool)
        if self.low_open:
            ok &= values != self.low
        if self.high_open:
            ok &= values != self.high
        return ok

    def axis(self, values: np.ndarray) -> "_Axis":
        values = np.unique(values)
        return _Axis(values=values, admissible=self.admissible(values))

    def corners(self) -> "_Axis":
        return self.axis(np.array([self.low, self.high]))

    def grid(self, low: float | None = None, high: float | None = None, step: float | None = None) -> "_Axis":
        low = self.low if low is None else max(self.low, low)
        high = self.high if high is None else min(self.high, high)
        step = self.step if step is None else step
        if low == high:
            return self.axis(np.array([low]))
        inner = np.arange(math.ceil(low / step), math.floor(high / step) + 1) * step
        inner = np.round(inner, 12)
        inner = inner[(inner > low) & (inner < high)]
        return self.axis(np.concatenate([[low, (low + high) / 2, high], inner]))


@dataclass(frozen=True)
class _Axis:
    values: np.ndarray
    admissible: np.ndarray


@dataclass(frozen=True)
class _Extreme:
    value: float
    admissible: float | None
    at: tuple[float, ...]
    samples: int

    def merge(self, other: "_Extreme", mode: Mode) -> "_Extreme":
        better = min if mode == "min" else max
        best = self if better(self.value, other.value) == self.value else other
        candidates = [v for v in (self.admissible, other.admissible) if v is not None]
        return _Extreme(
            value=best.value,
            admissible=better(candidates) if candidates else None,
            at=best.at,
            samples=self.samples + other.samples,
        )

    def is_open(self, mode: Mode, tolerance: float) -> bool:
        if self.admissible is None:
            return True
        gap = self.admissible - self.value if mode == "min" else self.value - self.admissible
        return gap > tolerance


def _sweep(axes: list[_Axis], fn: Callable[..., np.ndarray], mode: Mode, max_block: int) -> _Extreme:
    """Extreme of `fn` over the product of the axes, evaluated in bounded blocks."""
    shape = tuple(len(axis.values) for axis in axes)
    total = math.prod(shape)
    pick = np.argmin if mode == "min" else np.argmax
    best: _Extreme | None = None

    for start in range(0, total, max_block):
        index = np.unravel_index(np.arange(start, min(total, start + max_block)), shape)
        args = [axis.values[i] for axis, i in zip(axes, index)]
        ok = np.logical_and.reduce([axis.admissible[i] for axis, i in zip(axes, index)])
        values = fn(*args)
        k = int(pick(values))
        admissible = None
        if ok.any():
            admissible = float(values[ok].min() if mode == "min" else values[ok].max())
        block = _Extreme(
            value=float(values[k]),
            admissible=admissible,
            at=tuple(float(a[k]) for a in args),
            samples=len(values),
        )
        best = block if best is None else best.merge(block, mode)

    assert best is not None
    return best


def _grid_search(
    ranges: list[_SlotRange],
    fn: Callable[..., np.ndarray],
    mode: Mode,
    options: SearchOptions,
) -> _Extreme:
    extreme = _sweep([r.grid() for r in ranges], fn, mode, options.max_block)
    steps = [r.step for r in ranges]
    for _ in range(options.refine_rounds):
        axes = [
            r.grid(x - s, x + s, s / 10) if not r.is_point else r.grid()
            for r, x, s in zip(ranges, extreme.at, steps)
        ]
        extreme = extreme.merge(_sweep(axes, fn, mode, options.max_block), mode)
        steps = [s / 10 for s in steps]
    return extreme


class SearchResult(BaseModel):
    """Pattern I bounds together with what each optimisation method found."""

    model_config = ConfigDict(frozen=True)

    conclusion: Interval
    vertex_lower: float
    vertex_upper: float
    grid_lower: float
    grid_upper: float
    samples: int
    agreed: bool


def pattern1_search(pattern: PatternIInput, options: SearchOptions | None = None) -> SearchResult:
    """Minimise the lower and maximise the upper expression over the premise box.

    Both a 16-corner vertex enumeration and a refined grid sweep are run; the
    conclusion takes the outer of the two. An endpoint of the conclusion is
    open when it is only approached through open premise endpoints.
    """
    options = options or SearchOptions()
    intervals = {name: crisp_interval(q) for name, q in pattern.slots.items()}
    ranges = [
        _SlotRange.of(
            name,
            intervals[name],
            options.converse_step if name in CONVERSE_SLOTS and options.converse_step else options.sweep_step,
            options.converse_floor,
        )
        for name in PATTERN1_SLOTS
    ]
    upper_fn = _upper_bound(options.upper_bound_form)

    vertex_lower = _sweep([r.corners() for r in ranges], _lower_bound, "min", options.max_block)
    vertex_upper = _sweep([r.corners() for r in ranges], upper_fn, "max", options.max_block)
    grid_lower = _grid_search(ranges, _lower_bound, "min", options)
    grid_upper = _grid_search(ranges, upper_fn, "max", options)

    agreed = (
        abs(vertex_lower.value - grid_lower.value) <= options.agreement_tolerance
        and abs(vertex_upper.value - grid_upper.value) <= options.agreement_tolerance
    )
    if not agreed:
        logger.warning(
            "Vertex and grid bounds disagree; keeping the outer bound",
            vertex=(vertex_lower.value, vertex_upper.value),
            grid=(grid_lower.value, grid_upper.value),
        )

    lower = vertex_lower.merge(grid_lower, "min")
    upper = vertex_upper.merge(grid_upper, "max")
    samples = lower.samples + upper.samples
    logger.debug("Pattern I box searched", samples=samples, lower=lower.value, upper=upper.value)

    if lower.value > upper.value + options.tolerance:
        raise InconsistentPremises(
            "lower bound exceeds upper bound over the whole premise box",
            lower=lower.value,
            upper=upper.value,
            upper_bound_form=options.upper_bound_form,
        )

    low_value = min(lower.value, upper.value)
    conclusion = make_interval(
        low_value,
        upper.value,
        lower_open=lower.is_open("min", options.tolerance) and low_value < upper.value,
        upper_open=upper.is_open("max", options.tolerance) and low_value < upper.value,
    )
    return SearchResult(
        conclusion=conclusion,
        vertex_lower=vertex_lower.value,
        vertex_upper=vertex_upper.value,
        grid_lower=grid_lower.value,
        grid_upper=grid_upper.value,
        samples=samples,
        agreed=agreed,
    )


def pattern1_imprecise(pattern: PatternIInput, options: SearchOptions | None = None) -> Interval:
    return pattern1_search(pattern, options).conclusion


def _support_and_kernel_inputs(pattern: PatternIInput) -> tuple[PatternIInput, PatternIInput]:
    cuts = {name: support_kernel(q) for name, q in pattern.slots.items()}
    support = PatternIInput(**{name: quantifier_from_interval(s) for name, (s, _) in cuts.items()})
    kernel = PatternIInput(**{name: quantifier_from_interval(k) for name, (_, k) in cuts.items()})
    return support, kernel


def _as_trapezoid(support: Interval, kernel: Interval) -> TrapezoidalQuantifier:
    if not iv_entails(kernel, support):
        raise KernelNotInSupport(
            "independently computed kernel is not inside the support",
            support=support.render(),
            kernel=kernel.render(),
        )
    return TrapezoidalQuantifier.from_points(
        [support.lower, max(kernel.lower, support.lower), min(kernel.upper, support.upper), support.upper]
    )


def pattern1_fuzzy(pattern: PatternIInput, options: SearchOptions | None = None) -> TrapezoidalQuantifier:
    """SUP and KER of the conclusion computed independently from the premises' SUPs and KERs."""
    support_input, kernel_input = _support_and_kernel_inputs(pattern)
    support = pattern1_imprecise(support_input, options)
    kernel = pattern1_imprecise(kernel_input, options)
    return _as_trapezoid(support, kernel)


def pattern1_conclude(
    pattern: PatternIInput,
    options: SearchOptions | None = None,
) -> Interval | TrapezoidalQuantifier:
    if pattern.is_crisp:
        return pattern1_imprecise(pattern, options)
    return pattern1_fuzzy(pattern, options)


def pattern1_converse(
    pattern: PatternIInput,
    options: SearchOptions | None = None,
) -> Interval | TrapezoidalQuantifier:
    """Q' of "Q' Cs are As", by running Pattern I on the premises read from C to A."""
    return pattern1_conclude(pattern.converse(), options)


# Patterns II and III


SLOT_PROPORTIONS: dict[str, Proportion] = {
    "q1": Proportion(numerator="B", denominator="A"),
    "q1_conv": Proportion(numerator="A", denominator="B"),
    "q2": Proportion(numerator="C", denominator="B"),
    "q2_conv": Proportion(numerator="B", denominator="C"),
    "q3": Proportion(numerator="C", denominator="A"),
    "q3_conv": Proportion(numerator="A", denominator="C"),
}

THREE_TERM_SLOTS = tuple(SLOT_PROPORTIONS)


class _ThreeTermInput(BaseModel):
    model_config = ConfigDict(frozen=True)

    required: ClassVar[dict[str, tuple[str, ...]]]
    target: ClassVar[Proportion]
    name: ClassVar[str]

    version: Version = "general"
    q1: QuantifierKind | None = None
    q1_conv: QuantifierKind | None = None
    q2: QuantifierKind | None = None
    q2_conv: QuantifierKind | None = None
    q3: QuantifierKind | None = None
    q3_conv: QuantifierKind | None = None

    @classmethod
    def from_premises(cls, version: Version, premises: list[QuantifierKind]) -> "_ThreeTermInput":
        slots = cls.required[version]
        if len(premises) != len(slots):
            raise PatternArityError(
                f"{cls.name} {version} takes {len(slots)} premises, got {len(premises)}",
                pattern=cls.name,
                version=version,
            )
        return cls(version=version, **dict(zip(slots, premises)))

    @property
    def slots(self) -> dict[str, QuantifierKind]:
        missing = [name for name in self.required[self.version] if getattr(self, name) is None]
        if missing:
            raise PatternArityError(
                f"{self.name} {self.version} is missing premises",
                missing=",".join(missing),
            )
        return {name: getattr(self, name) for name in self.required[self.version]}


class PatternIIInput(_ThreeTermInput):
    """Premises of "Q As and Bs are Cs"."""

    required = {
        "general": THREE_TERM_SLOTS,
        # The second particular premise is read as "Bs are As".
        "particular": ("q1", "q1_conv", "q2", "q3"),
    }
    target = Proportion(numerator="C", denominator="A&B")
    name = "Pattern II"


class PatternIIIInput(_ThreeTermInput):
    """Premises of "Q Cs are As and Bs"."""

    required = {
        "general": THREE_TERM_SLOTS,
        "particular": ("q2_conv", "q3_conv"),
    }
    target = Proportion(numerator="A&B", denominator="C")
    name = "Pattern III"


def _constraints(slots: dict[str, Interval]) -> list[ProportionConstraint]:
    constraints = []
    for name, interval in slots.items():
        _require_proportion(name, interval)
        proportion = SLOT_PROPORTIONS[name]
        constraints.append(
            ProportionConstraint(
                numerator=proportion.numerator,
                denominator=proportion.denominator,
                bounds=interval,
            )
        )
    return constraints


def pattern23_range(
    pattern: PatternIIInput | PatternIIIInput,
    options: OracleOptions | None = None,
    cut: Literal["support", "kernel"] = "kernel",
) -> AttainedRange:
    """Attained conclusion range of a crisp pattern, or of one cut level of a fuzzy one."""
    options = options or OracleOptions()
    level = 0 if cut == "support" else 1
    intervals = {name: support_kernel(q)[level] for name, q in pattern.slots.items()}
    return attained_range(
        _constraints(intervals),
        pattern.target,
        total_max=options.total_max,
        model_limit=options.model_limit,
    )


def pattern23_bounds(pattern: PatternIIInput | PatternIIIInput, options: OracleOptions | None = None) -> Interval:
    return pattern23_range(pattern, options).interval


def pattern23_fuzzy(
    pattern: PatternIIInput | PatternIIIInput,
    options: OracleOptions | None = None,
) -> TrapezoidalQuantifier:
    support = pattern23_range(pattern, options, cut="support").interval
    kernel = pattern23_range(pattern, options, cut="kernel").interval
    return _as_trapezoid(support, kernel)
