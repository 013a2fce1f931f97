"""
Simulator configuration.

Loaded from TOML and validated with pydantic; validation errors are turned
into ConfigInvalidError naming the offending key::

    seed = 42
    session_seconds = 3600
    tick_size = "0.01"
    touch_size = 14

    [informed]
    target_volume = [14, 28]
    style = "pov"
    pov_rate = 0.21
"""

from __future__ import annotations

import tomllib
from decimal import Decimal
from enum import StrEnum
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from tick2impact.shared.exceptions import ConfigInvalidError, DescriptorError
from tick2impact.shared.logging import get_logger

logger = get_logger("sim.config")


class InformedStyle(StrEnum):
    """How the informed trader executes an episode."""

    AGGRESSIVE = "aggressive"
    POV = "pov"


class InformedTraderConfig(BaseModel):
    """
    Informed trader schedule.

    ``target_volume`` is either one size or a list drawn from per episode.
    Episodes run back to back, ``spacing`` seconds apart.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    target_volume: int | list[int]
    style: InformedStyle = InformedStyle.AGGRESSIVE
    pov_rate: float = Field(default=0.21, gt=0, le=1)
    spacing: float = Field(default=60.0, ge=0)
    start: float = Field(default=1.0, ge=0)
    direction: Literal["random", "buy", "sell"] = "random"

    @field_validator("target_volume")
    @classmethod
    def _positive_targets(cls, value: int | list[int]) -> int | list[int]:
        targets = value if isinstance(value, list) else [value]
        if not targets or any(t < 1 for t in targets):
            raise ValueError("target volumes must be positive integers")
        return value

    @model_validator(mode="after")
    def _aggressive_needs_spacing(self) -> InformedTraderConfig:
        if self.style is InformedStyle.AGGRESSIVE and self.spacing <= 0:
            raise ValueError("aggressive episodes need a positive spacing")
        return self

    @property
    def targets(self) -> tuple[int, ...]:
        return tuple(self.target_volume) if isinstance(self.target_volume, list) else (self.target_volume,)


class SimConfig(BaseModel):
    """
    One synthetic session: a balanced noise flow against a replenishing
    market maker, plus an optional informed trader.

    Rates are per second; noise trades arrive independently on each side.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    seed: int = Field(ge=0, lt=2**64)
    instrument: str = Field(default="SIM", min_length=1)
    session_seconds: float = Field(default=3600.0, gt=0)
    tick_size: Decimal = Field(default=Decimal("0.01"), gt=0)
    initial_mid: float = Field(default=100.005, gt=0)
    touch_size: int = Field(default=14, ge=1)
    touch_jitter: int = Field(default=0, ge=0)
    replenish_delay: float = Field(default=0.0, ge=0)
    noise_rate: float = Field(default=0.5, gt=0)
    noise_size_mean: float = Field(default=3.0, ge=1)
    quote_rate: float = Field(default=0.0, ge=0)
    informed: InformedTraderConfig | None = None

    @model_validator(mode="after")
    def _jitter_below_touch(self) -> SimConfig:
        if self.touch_jitter >= self.touch_size:
            raise ValueError("touch_jitter must be smaller than touch_size")
        return self


def _first_error_key(error: ValidationError) -> str:
    loc = [str(part) for part in error.errors()[0]["loc"] if not isinstance(part, int)]
    return ".".join(loc) if loc else "config"


def sim_config_from_mapping(data: dict[str, Any], source: str | None = None) -> SimConfig:
    """
    Validate raw key/value data as a SimConfig.

    Raises:
        ConfigInvalidError: naming the first missing or invalid key
    """
    try:
        return SimConfig.model_validate(data)
    except ValidationError as e:
        key = _first_error_key(e)
        first = e.errors()[0]
        reason = "missing required key" if first["type"] == "missing" else first["msg"]
        raise ConfigInvalidError(f"{key}: {reason}", key=key, source=source) from None


def load_sim_config(path: Path) -> SimConfig:
    """
    Read a simulator configuration file.

    Raises:
        DescriptorError: the file is missing or not valid TOML
        ConfigInvalidError: a key is missing or invalid
    """
    try:
        with path.open("rb") as handle:
            data = tomllib.load(handle)
    except FileNotFoundError:
        raise DescriptorError("Simulator config not found", path=str(path)) from None
    except tomllib.TOMLDecodeError as e:
        raise DescriptorError(f"Simulator config is not valid TOML: {e}", path=str(path)) from e
    config = sim_config_from_mapping(data, source=str(path))
    logger.debug(f"Loaded simulator config from {path}: seed={config.seed}")
    return config
