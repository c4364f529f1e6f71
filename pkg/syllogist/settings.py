from functools import lru_cache
from typing import Literal

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="SYLLOGIST_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    log_level: str = "INFO"
    log_format: Literal["console", "json"] = "console"

    # Default lexicon path (SYLLOGIST_LEXICON)
    lexicon: str | None = None

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
    upper_bound_form: Literal["derived", "printed"] = "derived"


@lru_cache
def get_settings() -> Settings:
    return Settings()
