"""
Run options DTOs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Self

from tick2impact.domain.value_objects.extraction import ExtractionConfig
from tick2impact.shared.constants import (
    DEFAULT_CONCAVE_INTERCEPT,
    DEFAULT_MIN_COUNT,
    DEFAULT_OVERSHOOT_TOL,
    DEFAULT_V_MAX,
    DEFAULT_V_STEP,
)
from tick2impact.shared.exceptions import ConfigInvalidError
from tick2impact.shared.settings import ToolkitSettings, get_settings


def _require_file(path: Path | None, key: str) -> None:
    if path is None:
        raise ConfigInvalidError(f"{key} is required", key=key)
    if not path.is_file():
        raise ConfigInvalidError(f"{key} does not exist: {path}", key=key, source=str(path))


def _require_writable_dir(path: Path, key: str) -> None:
    if path.exists() and not path.is_dir():
        raise ConfigInvalidError(f"{key} is not a directory: {path}", key=key, source=str(path))


@dataclass
class AnalysisOptions:
    """
    Options for analyzing one instrument's session.

    Defaults come from ToolkitSettings; CLI flags override them.
    """

    # Inputs and outputs
    ticks_path: Path | None = None
    descriptor_path: Path | None = None
    output_dir: Path | None = None

    # Volume grid
    v_step: float = DEFAULT_V_STEP
    v_max: float = DEFAULT_V_MAX

    # Extraction and statistics
    overshoot_tol: float = DEFAULT_OVERSHOOT_TOL
    min_count: int = DEFAULT_MIN_COUNT
    weighted: bool = False
    require_post_quote: bool = True

    verbose: bool = False

    @classmethod
    def from_settings(cls, settings: ToolkitSettings | None = None, **overrides: Any) -> Self:
        """Options seeded from settings; ``None`` overrides are ignored."""
        settings = settings or get_settings()
        values: dict[str, Any] = {
            "v_step": settings.v_step,
            "v_max": settings.v_max,
            "overshoot_tol": settings.overshoot_tol,
            "min_count": settings.min_count,
            "verbose": settings.verbose,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def extraction_config(self) -> ExtractionConfig:
        """
        Extraction settings for these options.

        Raises:
            ConfigInvalidError: invalid grid or tolerance
        """
        return ExtractionConfig.from_grid(
            v_step=self.v_step,
            v_max=self.v_max,
            overshoot_tol=self.overshoot_tol,
            require_post_quote=self.require_post_quote,
        )

    def validate(self) -> None:
        """
        Check inputs exist and values are in range.

        Raises:
            ConfigInvalidError: naming the offending option
        """
        _require_file(self.ticks_path, "ticks")
        _require_file(self.descriptor_path, "desc")
        if self.output_dir is not None:
            _require_writable_dir(self.output_dir, "out")
        if self.min_count < 1:
            raise ConfigInvalidError(f"min_count must be at least 1, got {self.min_count}", key="min_count")
        self.extraction_config()


@dataclass
class SimulationOptions:
    """Options for generating a synthetic session."""

    config_path: Path
    output_dir: Path
    header: bool = True

    def validate(self) -> None:
        _require_file(self.config_path, "config")
        _require_writable_dir(self.output_dir, "out")


@dataclass
class ReportOptions:
    """Options for merging analysis directories into one table."""

    inputs: list[Path] = field(default_factory=list)
    output_path: Path | None = None
    concave_intercept: float = DEFAULT_CONCAVE_INTERCEPT

    def validate(self) -> None:
        if not self.inputs:
            raise ConfigInvalidError("at least one analysis directory is required", key="in")
        for path in self.inputs:
            if not path.is_dir():
                raise ConfigInvalidError(f"not a directory: {path}", key="in", source=str(path))
        if self.output_path is not None and self.output_path.is_dir():
            raise ConfigInvalidError(f"output is a directory: {self.output_path}", key="out")
