import math
from typing import Callable, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from syllogist.errors import MismatchedAlphaGrid
from .interval import (
    Interval,
    format_number,
    iv_add,
    iv_clamp_floor,
    iv_max,
    iv_mul,
    iv_scale,
    iv_sub,
)

DEFAULT_ALPHA_RESOLUTION = 11

# Slack for float noise when checking that cuts are nested.
NESTING_SLACK = 1e-12

ExtensionOp = Literal["add", "sub", "mul"]
BoundMode = Literal["exact", "at_least"]


def alpha_grid(resolution: int = DEFAULT_ALPHA_RESOLUTION) -> tuple[float, ...]:
    """Evenly spaced α levels; level 0.0 stands for the α→0⁺ limit (the support)."""
    if resolution < 2:
        raise ValueError(f"alpha resolution must be at least 2, got {resolution}")
    return tuple(i / (resolution - 1) for i in range(resolution))


class TrapezoidalQuantifier(BaseModel):
    """Four-point fuzzy number {support_low, kernel_low, kernel_high, support_high}."""

    model_config = ConfigDict(frozen=True)

    support_low: float
    kernel_low: float
    kernel_high: float
    support_high: float

    @model_validator(mode="after")
    def _check_order(self) -> "TrapezoidalQuantifier":
        points = self.points
        if not all(math.isfinite(p) for p in points):
            raise ValueError("trapezoid points must be finite")
        if not (points[0] <= points[1] <= points[2] <= points[3]):
            raise ValueError(f"trapezoid points must be non-decreasing, got {points}")
        return self

    @classmethod
    def from_points(cls, points: "list[float] | tuple[float, ...]") -> "TrapezoidalQuantifier":
        if len(points) != 4:
            raise ValueError(f"a trapezoid needs exactly 4 points, got {len(points)}")
        a, b, c, d = (float(p) for p in points)
        return cls(support_low=a, kernel_low=b, kernel_high=c, support_high=d)

    @classmethod
    def crisp(cls, interval: Interval) -> "TrapezoidalQuantifier":
        return cls.from_points([interval.lower, interval.lower, interval.upper, interval.upper])

    @property
    def points(self) -> tuple[float, float, float, float]:
        return self.support_low, self.kernel_low, self.kernel_high, self.support_high

    @property
    def support(self) -> Interval:
        return Interval(lower=self.support_low, upper=self.support_high)

    @property
    def kernel(self) -> Interval:
        return Interval(lower=self.kernel_low, upper=self.kernel_high)

    @property
    def is_proportion(self) -> bool:
        return 0.0 <= self.support_low and self.support_high <= 1.0

    def cut(self, alpha: float) -> Interval:
        a, b, c, d = self.points
        # Interpolated endpoints never cross the kernel, even by an ulp.
        return Interval(lower=min(a + alpha * (b - a), b), upper=max(d - alpha * (d - c), c))

    def membership(self, x: "float | np.ndarray") -> "float | np.ndarray":
        a, b, c, d = self.points
        xs = np.asarray(x, dtype=float)
        mu = np.zeros_like(xs)
        mu = np.where((xs >= b) & (xs <= c), 1.0, mu)
        # Slopes are only evaluated on their own edge; a near-vertical edge would overflow elsewhere.
        if b > a:
            rising = (xs >= a) & (xs < b)
            np.divide(xs - a, b - a, out=mu, where=rising)
        if d > c:
            falling = (xs > c) & (xs <= d)
            np.divide(d - xs, d - c, out=mu, where=falling)
        mu = np.clip(mu, 0.0, 1.0)
        if np.ndim(x) == 0:
            return float(mu)
        return mu

    def render(self) -> str:
        return "{" + ", ".join(format_number(p) for p in self.points) + "}"


class AlphaCut(BaseModel):
    model_config = ConfigDict(frozen=True)

    alpha: float
    cut: Interval


class AlphaCutNumber(BaseModel):
    """A fuzzy number carried as nested α-cuts on a fixed grid.

    Support (α→0⁺) and kernel (α=1) are exact; products of trapezoids are not
    trapezoidal, so between stored levels the shape is not interpolated.
    """

    model_config = ConfigDict(frozen=True)

    levels: tuple[AlphaCut, ...]

    @model_validator(mode="after")
    def _check_levels(self) -> "AlphaCutNumber":
        if len(self.levels) < 2:
            raise ValueError("an α-cut number needs at least the support and the kernel")
        alphas = self.alphas
        if alphas[0] != 0.0 or alphas[-1] != 1.0:
            raise ValueError("α grid must start at 0 (support) and end at 1 (kernel)")
        if any(a2 <= a1 for a1, a2 in zip(alphas, alphas[1:])):
            raise ValueError("α levels must be strictly increasing")
        for outer, inner in zip(self.levels, self.levels[1:]):
            if (
                inner.cut.lower < outer.cut.lower - NESTING_SLACK
                or inner.cut.upper > outer.cut.upper + NESTING_SLACK
            ):
                raise ValueError(f"α-cuts are not nested at α={inner.alpha}")
        return self

    @classmethod
    def from_trapezoid(
        cls,
        trapezoid: TrapezoidalQuantifier,
        resolution: int = DEFAULT_ALPHA_RESOLUTION,
    ) -> "AlphaCutNumber":
        return cls(
            levels=tuple(AlphaCut(alpha=a, cut=trapezoid.cut(a)) for a in alpha_grid(resolution))
        )

    @classmethod
    def crisp(cls, interval: Interval, resolution: int = DEFAULT_ALPHA_RESOLUTION) -> "AlphaCutNumber":
        return cls(levels=tuple(AlphaCut(alpha=a, cut=interval) for a in alpha_grid(resolution)))

    @classmethod
    def crisp_point(cls, value: float, resolution: int = DEFAULT_ALPHA_RESOLUTION) -> "AlphaCutNumber":
        return cls.crisp(Interval(lower=value, upper=value), resolution)

    @property
    def alphas(self) -> tuple[float, ...]:
        return tuple(level.alpha for level in self.levels)

    @property
    def resolution(self) -> int:
        return len(self.levels)

    @property
    def support(self) -> Interval:
        return self.levels[0].cut

    @property
    def kernel(self) -> Interval:
        return self.levels[-1].cut

    def cut(self, alpha: float) -> Interval:
        for level in self.levels:
            if math.isclose(level.alpha, alpha, abs_tol=1e-12):
                return level.cut
        raise KeyError(f"α={alpha} is not on this number's grid")

    def map(self, fn: Callable[[Interval], Interval]) -> "AlphaCutNumber":
        return AlphaCutNumber(
            levels=tuple(AlphaCut(alpha=lv.alpha, cut=fn(lv.cut)) for lv in self.levels)
        )

    def combine(self, other: "AlphaCutNumber", fn: Callable[[Interval, Interval], Interval]) -> "AlphaCutNumber":
        _check_same_grid(self, other)
        return AlphaCutNumber(
            levels=tuple(
                AlphaCut(alpha=x.alpha, cut=fn(x.cut, y.cut))
                for x, y in zip(self.levels, other.levels)
            )
        )

    @property
    def is_crisp(self) -> bool:
        return self.support == self.kernel

    def as_trapezoid(self) -> TrapezoidalQuantifier:
        """Trapezoid through the exact support and kernel endpoints."""
        return TrapezoidalQuantifier.from_points(
            [self.support.lower, self.kernel.lower, self.kernel.upper, self.support.upper]
        )


def _check_same_grid(a: AlphaCutNumber, b: AlphaCutNumber) -> None:
    if len(a.levels) != len(b.levels) or any(
        not math.isclose(x, y, abs_tol=1e-12) for x, y in zip(a.alphas, b.alphas)
    ):
        raise MismatchedAlphaGrid(
            "operands use different α grids",
            left=len(a.levels),
            right=len(b.levels),
        )


def fz_add(a: AlphaCutNumber, b: AlphaCutNumber) -> AlphaCutNumber:
    return a.combine(b, lambda x, y: iv_add(x, y, clamp=False))


def fz_sub(a: AlphaCutNumber, b: AlphaCutNumber) -> AlphaCutNumber:
    return a.combine(b, lambda x, y: iv_sub(x, y, clamp=False))


def fz_mul(a: AlphaCutNumber, b: AlphaCutNumber) -> AlphaCutNumber:
    return a.combine(b, iv_mul)


def fz_max(a: AlphaCutNumber, b: AlphaCutNumber) -> AlphaCutNumber:
    return a.combine(b, iv_max)


def fz_scale(a: AlphaCutNumber, factor: float) -> AlphaCutNumber:
    return a.map(lambda x: iv_scale(x, factor))


def fz_clamp_floor(a: AlphaCutNumber, floor: float) -> AlphaCutNumber:
    if not 0.0 <= floor <= 1.0:
        raise ValueError(f"floor must lie in [0, 1], got {floor}")
    return a.map(lambda x: iv_clamp_floor(x, floor))


class BoundedQuantifier(BaseModel):
    """A conclusion quantifier that is either exact or only a lower bound ("≥")."""

    model_config = ConfigDict(frozen=True)

    core: AlphaCutNumber
    mode: BoundMode = "exact"

    @classmethod
    def at_least(cls, core: AlphaCutNumber) -> "BoundedQuantifier":
        return cls(core=core, mode="at_least")

    def effective_cut(self, alpha: float) -> Interval:
        cut = self.core.cut(alpha)
        if self.mode == "exact":
            return cut
        return _widen_to_one(cut)

    def effective(self) -> AlphaCutNumber:
        if self.mode == "exact":
            return self.core
        return self.core.map(_widen_to_one)


def _widen_to_one(cut: Interval) -> Interval:
    return Interval(
        lower=cut.lower,
        lower_open=cut.lower_open,
        upper=max(cut.upper, 1.0),
    )


def defuzz_bounds(quantifier: BoundedQuantifier) -> tuple[Interval, Interval]:
    """(support, kernel) of the effective quantifier."""
    effective = quantifier.effective()
    return effective.support, effective.kernel


def _breakpoint_grid(trapezoid: TrapezoidalQuantifier, step: float) -> np.ndarray:
    a, b, c, d = trapezoid.points
    pieces = []
    for lo, hi in ((a, b), (b, c), (c, d)):
        count = max(2, math.ceil((hi - lo) / step) + 1)
        pieces.append(np.linspace(lo, hi, count))
    return np.unique(np.concatenate(pieces))


_EXTENSION_OPS: dict[str, Callable[[np.ndarray, np.ndarray], np.ndarray]] = {
    "add": np.add,
    "sub": np.subtract,
    "mul": np.multiply,
}


def extension_principle_cuts(
    op: ExtensionOp,
    a: TrapezoidalQuantifier,
    b: TrapezoidalQuantifier,
    alphas: tuple[float, ...] | None = None,
    step: float = 1e-3,
) -> AlphaCutNumber:
    """Brute-force sup-min extension principle on a dense grid.

    Independent of the α-cut arithmetic above; the two must agree to within
    the grid resolution.
    """
    alphas = alphas if alphas is not None else alpha_grid()
    xs = _breakpoint_grid(a, step)
    ys = _breakpoint_grid(b, step)

    values = _EXTENSION_OPS[op](xs[:, None], ys[None, :])
    degrees = np.minimum(a.membership(xs)[:, None], b.membership(ys)[None, :])

    levels = []
    for alpha in alphas:
        # α = 0 is the closed support, not the set of strictly positive degrees.
        mask = np.ones_like(degrees, dtype=bool) if alpha == 0.0 else degrees >= alpha - 1e-12
        selected = values[mask]
        levels.append(
            AlphaCut(alpha=alpha, cut=Interval(lower=float(selected.min()), upper=float(selected.max())))
        )
    return AlphaCutNumber(levels=tuple(levels))


class Fuzzy(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["fuzzy"] = "fuzzy"
    trapezoid: TrapezoidalQuantifier
    label: str | None = None


class Composed(BaseModel):
    """A quantifier obtained by fuzzy arithmetic, kept with the expression that built it."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["composed"] = "composed"
    expression: str
    value: AlphaCutNumber
    label: str | None = None
