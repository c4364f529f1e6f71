from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, field_validator

from syllogist.settings import Settings

OutputFormat = Literal["text", "json"]
UpperBoundForm = Literal["derived", "printed"]
TNorm = Literal["min", "product"]


class SearchOptions(BaseModel):
    """Knobs of the Pattern I bound search."""

    model_config = ConfigDict(frozen=True)

    sweep_step: float = 0.01
    # Grid step for the converse slots; falls back to sweep_step
    converse_step: float | None = None
    converse_floor: float = 1e-6
    refine_rounds: int = 3
    tolerance: float = 1e-9
    agreement_tolerance: float = 1e-6
    upper_bound_form: UpperBoundForm = "derived"

    # Largest number of grid points evaluated in one numpy block
    max_block: int = 2_000_000


class OracleOptions(BaseModel):
    model_config = ConfigDict(frozen=True)

    total_max: int = 60
    model_limit: int = 2_000_000


class RunConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    lexicon_path: Path | None = None
    output_format: OutputFormat = "text"

    # Fuzzy arithmetic
    alpha_resolution: int = 11

    # Oracle
    mood_budget: int = 8
    oracle_budget: int = 60
    oracle_model_limit: int = 2_000_000

    # Pattern I search
    sweep_step: float = 0.01
    converse_step: float = 0.01
    converse_floor: float = 1e-6
    refine_rounds: int = 3
    tolerance: float = 1e-9
    agreement_tolerance: float = 1e-6
    upper_bound_form: UpperBoundForm = "derived"

    tnorm: TNorm = "min"

    @field_validator("lexicon_path")
    @classmethod
    def _lexicon_exists(cls, value: Path | None) -> Path | None:
        if value is not None and not value.exists():
            raise ValueError(f"lexicon file not found: {value}")
        return value

    @field_validator("sweep_step", "converse_step")
    @classmethod
    def _step_in_range(cls, value: float) -> float:
        if not 0.0 < value <= 0.5:
            raise ValueError(f"grid step must lie in (0, 0.5], got {value}")
        return value

    @field_validator("converse_floor")
    @classmethod
    def _floor_in_range(cls, value: float) -> float:
        if not 0.0 < value < 0.01:
            raise ValueError(f"converse floor must lie in (0, 0.01), got {value}")
        return value

    @field_validator("mood_budget", "oracle_budget")
    @classmethod
    def _budget_in_range(cls, value: int) -> int:
        if value < 3:
            raise ValueError(f"oracle budget must be at least 3, got {value}")
        return value

    @field_validator("alpha_resolution")
    @classmethod
    def _resolution_in_range(cls, value: int) -> int:
        if value < 2:
            raise ValueError(f"alpha resolution must be at least 2, got {value}")
        return value

    @field_validator("tolerance", "agreement_tolerance")
    @classmethod
    def _tolerance_in_range(cls, value: float) -> float:
        if not 0.0 < value <= 1e-3:
            raise ValueError(f"tolerance must lie in (0, 1e-3], got {value}")
        return value

    @classmethod
    def from_settings(cls, settings: Settings, **overrides: Any) -> "RunConfig":
        values: dict[str, Any] = {
            "lexicon_path": Path(settings.lexicon) if settings.lexicon else None,
            "alpha_resolution": settings.alpha_resolution,
            "mood_budget": settings.mood_budget,
            "oracle_budget": settings.oracle_budget,
            "oracle_model_limit": settings.oracle_model_limit,
            "sweep_step": settings.sweep_step,
            "converse_step": settings.converse_step,
            "converse_floor": settings.converse_floor,
            "refine_rounds": settings.refine_rounds,
            "tolerance": settings.tolerance,
            "agreement_tolerance": settings.agreement_tolerance,
            "upper_bound_form": settings.upper_bound_form,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def search_options(self) -> SearchOptions:
        return SearchOptions(
            sweep_step=self.sweep_step,
            converse_step=self.converse_step,
            converse_floor=self.converse_floor,
            refine_rounds=self.refine_rounds,
            tolerance=self.tolerance,
            agreement_tolerance=self.agreement_tolerance,
            upper_bound_form=self.upper_bound_form,
        )

    def oracle_options(self, total_max: int | None = None) -> OracleOptions:
        return OracleOptions(
            total_max=total_max if total_max is not None else self.oracle_budget,
            model_limit=self.oracle_model_limit,
        )
