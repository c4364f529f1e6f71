import math
from enum import Enum
from typing import Literal

from pydantic import BaseModel, ConfigDict, model_validator

from syllogist.errors import DivisionByZeroInterval, MalformedInterval

DEFAULT_TOLERANCE = 1e-9

Endpoint = tuple[float, bool]


def format_number(value: float) -> str:
    """Shortest text that reads back to the same float; integral values lose the '.0'."""
    if value == 0:
        return "0"
    if value.is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


class Interval(BaseModel):
    """A real interval with open/closed endpoint flags.

    Proportional quantifiers live inside [0, 1]. Intermediate results of
    unclamped subtraction may leave that range, so the model itself only
    requires finite, ordered endpoints.
    """

    model_config = ConfigDict(frozen=True)

    lower: float
    upper: float
    lower_open: bool = False
    upper_open: bool = False

    @model_validator(mode="after")
    def _check_bounds(self) -> "Interval":
        if not (math.isfinite(self.lower) and math.isfinite(self.upper)):
            raise ValueError("interval endpoints must be finite")
        if self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper}")
        if self.lower == self.upper and (self.lower_open or self.upper_open):
            raise ValueError("a point interval cannot have an open endpoint")
        return self

    @classmethod
    def point(cls, value: float) -> "Interval":
        return make_interval(value, value)

    @classmethod
    def closed(cls, lower: float, upper: float) -> "Interval":
        return make_interval(lower, upper)

    @classmethod
    def unit(cls) -> "Interval":
        return cls(lower=0.0, upper=1.0)

    @property
    def is_point(self) -> bool:
        return self.lower == self.upper

    @property
    def width(self) -> float:
        return self.upper - self.lower

    @property
    def is_proportion(self) -> bool:
        return 0.0 <= self.lower and self.upper <= 1.0

    def closure_contains(self, value: float) -> bool:
        return self.lower <= value <= self.upper

    def contains(self, value: float, tolerance: float = DEFAULT_TOLERANCE) -> bool:
        if self.lower_open:
            if not value > self.lower:
                return False
        elif value < self.lower - tolerance:
            return False

        if self.upper_open:
            if not value < self.upper:
                return False
        elif value > self.upper + tolerance:
            return False

        return True

    def render(self) -> str:
        left = "(" if self.lower_open else "["
        right = ")" if self.upper_open else "]"
        return f"{left}{format_number(self.lower)}, {format_number(self.upper)}{right}"

    def __str__(self) -> str:
        return self.render()


def make_interval(
    lower: float,
    upper: float,
    lower_open: bool = False,
    upper_open: bool = False,
    proportional: bool = False,
) -> Interval:
    """Validated constructor raising MalformedInterval instead of a pydantic error."""
    lower = float(lower)
    upper = float(upper)
    if not (math.isfinite(lower) and math.isfinite(upper)):
        raise MalformedInterval("interval endpoints must be finite", lower=lower, upper=upper)
    if lower > upper:
        raise MalformedInterval("lower bound exceeds upper bound", lower=lower, upper=upper)
    if proportional and (lower < 0.0 or upper > 1.0):
        raise MalformedInterval("proportion outside [0, 1]", lower=lower, upper=upper)
    if lower == upper and (lower_open or upper_open):
        raise MalformedInterval("empty interval", lower=lower, upper=upper)
    return Interval(lower=lower, upper=upper, lower_open=lower_open, upper_open=upper_open)


def _from_endpoints(lower: Endpoint, upper: Endpoint) -> Interval:
    (lo, lo_open), (hi, hi_open) = lower, upper
    if lo > hi:
        # Rounding in chained operations; the two endpoints describe one value.
        lo = hi = (lo + hi) / 2
    if lo == hi:
        lo_open = hi_open = False
    return Interval(lower=lo, upper=hi, lower_open=lo_open, upper_open=hi_open)


def _clamp(endpoint: Endpoint, low: float = 0.0, high: float = 1.0) -> Endpoint:
    value, is_open = endpoint
    if value < low:
        return low, False
    if value > high:
        return high, False
    return value, is_open


def _extreme(candidates: list[Endpoint], mode: Literal["min", "max"]) -> Endpoint:
    pick = min if mode == "min" else max
    value = pick(v for v, _ in candidates)
    # Attained (closed) as soon as one closed combination reaches the extreme.
    is_open = all(o for v, o in candidates if v == value)
    return value, is_open


def iv_add(a: Interval, b: Interval, clamp: bool = False) -> Interval:
    lower = (a.lower + b.lower, a.lower_open or b.lower_open)
    upper = (a.upper + b.upper, a.upper_open or b.upper_open)
    if clamp:
        lower, upper = _clamp(lower), _clamp(upper)
    return _from_endpoints(lower, upper)


def iv_sub(a: Interval, b: Interval, clamp: bool = False) -> Interval:
    lower = (a.lower - b.upper, a.lower_open or b.upper_open)
    upper = (a.upper - b.lower, a.upper_open or b.lower_open)
    if clamp:
        lower, upper = _clamp(lower), _clamp(upper)
    return _from_endpoints(lower, upper)


def iv_mul(a: Interval, b: Interval) -> Interval:
    candidates = [
        (x * y, x_open or y_open)
        for x, x_open in ((a.lower, a.lower_open), (a.upper, a.upper_open))
        for y, y_open in ((b.lower, b.lower_open), (b.upper, b.upper_open))
    ]
    return _from_endpoints(_extreme(candidates, "min"), _extreme(candidates, "max"))


def iv_div(a: Interval, b: Interval) -> Interval:
    if b.closure_contains(0.0):
        raise DivisionByZeroInterval("divisor interval contains 0", divisor=b.render())
    candidates = [
        (x / y, x_open or y_open)
        for x, x_open in ((a.lower, a.lower_open), (a.upper, a.upper_open))
        for y, y_open in ((b.lower, b.lower_open), (b.upper, b.upper_open))
    ]
    return _from_endpoints(_extreme(candidates, "min"), _extreme(candidates, "max"))


def iv_scale(a: Interval, factor: float) -> Interval:
    if factor >= 0:
        return _from_endpoints((a.lower * factor, a.lower_open), (a.upper * factor, a.upper_open))
    return _from_endpoints((a.upper * factor, a.upper_open), (a.lower * factor, a.lower_open))


def iv_max(a: Interval, b: Interval) -> Interval:
    return _from_endpoints(
        _extreme([(a.lower, a.lower_open), (b.lower, b.lower_open)], "max"),
        _extreme([(a.upper, a.upper_open), (b.upper, b.upper_open)], "max"),
    )


def iv_min(a: Interval, b: Interval) -> Interval:
    return _from_endpoints(
        _extreme([(a.lower, a.lower_open), (b.lower, b.lower_open)], "min"),
        _extreme([(a.upper, a.upper_open), (b.upper, b.upper_open)], "min"),
    )


def iv_span(a: Interval, b: Interval) -> Interval:
    """From the lower endpoint of `a` to the upper endpoint of `b`."""
    return _from_endpoints((a.lower, a.lower_open), (b.upper, b.upper_open))


def iv_clamp_floor(a: Interval, floor: float) -> Interval:
    return _from_endpoints(
        _clamp((a.lower, a.lower_open), low=floor, high=math.inf),
        _clamp((a.upper, a.upper_open), low=floor, high=math.inf),
    )


def iv_hull(a: Interval, b: Interval) -> Interval:
    return _from_endpoints(
        _extreme([(a.lower, a.lower_open), (b.lower, b.lower_open)], "min"),
        _extreme([(a.upper, a.upper_open), (b.upper, b.upper_open)], "max"),
    )


def iv_entails(
    specific: Interval,
    general: Interval,
    tolerance: float = DEFAULT_TOLERANCE,
) -> bool:
    """True iff every point of `specific` lies in `general`.

    Closed endpoints of `general` are compared with an absolute tolerance;
    an open endpoint of `general` must be cleared strictly unless `specific`
    is open at the same place.
    """
    if general.lower_open and not specific.lower_open:
        lower_ok = specific.lower > general.lower
    else:
        lower_ok = specific.lower >= general.lower - tolerance

    if general.upper_open and not specific.upper_open:
        upper_ok = specific.upper < general.upper
    else:
        upper_ok = specific.upper <= general.upper + tolerance

    return lower_ok and upper_ok


class ClassicalLetter(str, Enum):
    A = "A"
    E = "E"
    I = "I"  # noqa: E741
    O = "O"  # noqa: E741

    @property
    def interval(self) -> Interval:
        return CLASSICAL_INTERVALS[self]

    @property
    def word(self) -> str:
        return CLASSICAL_WORDS[self]

    @property
    def symmetric(self) -> bool:
        return self in (ClassicalLetter.E, ClassicalLetter.I)


# `some` and `not all` carry their ε as an open bound.
CLASSICAL_INTERVALS: dict[ClassicalLetter, Interval] = {
    ClassicalLetter.A: Interval(lower=1.0, upper=1.0),
    ClassicalLetter.E: Interval(lower=0.0, upper=0.0),
    ClassicalLetter.I: Interval(lower=0.0, upper=1.0, lower_open=True),
    ClassicalLetter.O: Interval(lower=0.0, upper=1.0, upper_open=True),
}

CLASSICAL_WORDS: dict[ClassicalLetter, str] = {
    ClassicalLetter.A: "all",
    ClassicalLetter.E: "no",
    ClassicalLetter.I: "some",
    ClassicalLetter.O: "not all",
}


class Precise(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["precise"] = "precise"
    value: float
    label: str | None = None

    @model_validator(mode="after")
    def _check_value(self) -> "Precise":
        if not math.isfinite(self.value):
            raise ValueError("precise quantifier must be finite")
        return self

    @property
    def interval(self) -> Interval:
        return Interval(lower=self.value, upper=self.value)


class Imprecise(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["imprecise"] = "imprecise"
    interval: Interval
    label: str | None = None


class Classical(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["classical"] = "classical"
    letter: ClassicalLetter
    label: str | None = None

    @property
    def interval(self) -> Interval:
        return self.letter.interval


def quantifier_from_interval(interval: Interval, label: str | None = None) -> Precise | Imprecise:
    """Canonical crisp quantifier: a closed point interval becomes Precise."""
    if interval.is_point:
        return Precise(value=interval.lower, label=label)
    return Imprecise(interval=interval, label=label)
