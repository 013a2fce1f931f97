"""
Environment-driven defaults.

Every value can be overridden with a ``TICK2IMPACT_`` environment variable,
e.g. ``TICK2IMPACT_MIN_COUNT=50``. CLI flags take precedence over these.
"""

from __future__ import annotations

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from tick2impact.shared.constants import (
    DEFAULT_CONCAVE_INTERCEPT,
    DEFAULT_MIN_COUNT,
    DEFAULT_OVERSHOOT_TOL,
    DEFAULT_V_MAX,
    DEFAULT_V_STEP,
)


class ToolkitSettings(BaseSettings):
    """Analysis defaults shared by the services and the CLI."""

    model_config = SettingsConfigDict(env_prefix="TICK2IMPACT_", extra="ignore")

    v_step: float = Field(default=DEFAULT_V_STEP, gt=0)
    v_max: float = Field(default=DEFAULT_V_MAX, gt=0)
    overshoot_tol: float = Field(default=DEFAULT_OVERSHOOT_TOL, gt=0)
    min_count: int = Field(default=DEFAULT_MIN_COUNT, ge=1)
    concave_intercept: float = Field(default=DEFAULT_CONCAVE_INTERCEPT, ge=0)
    verbose: bool = False


@lru_cache(maxsize=1)
def get_settings() -> ToolkitSettings:
    """Return the process-wide settings (read once)."""
    return ToolkitSettings()
