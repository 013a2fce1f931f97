"""
Extraction configuration value object.

Parameters of the imbalance state machine and the normalized volume grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Self

from tick2impact.shared.constants import (
    DEFAULT_OVERSHOOT_TOL,
    DEFAULT_V_MAX,
    DEFAULT_V_STEP,
)
from tick2impact.shared.exceptions import ConfigInvalidError


def volume_grid(v_step: float = DEFAULT_V_STEP, v_max: float = DEFAULT_V_MAX) -> tuple[float, ...]:
    """
    Normalized volumes ``v_step, 2 v_step, ...`` up to and including ``v_max``.

    Raises:
        ConfigInvalidError: non-positive step or maximum
    """
    if v_step <= 0:
        raise ConfigInvalidError(f"v_step must be positive, got {v_step}", key="v_step")
    if v_max <= 0:
        raise ConfigInvalidError(f"v_max must be positive, got {v_max}", key="v_max")
    count = math.floor(v_max / v_step + 1e-9)
    return tuple(round(k * v_step, 10) for k in range(1, count + 1))


def target_for(v: float, touch_volume: float) -> int:
    """Target volume ``V_T`` for a normalized volume, rounded half up, at least 1."""
    return max(1, math.floor(v * touch_volume + 0.5))


@dataclass(frozen=True, slots=True)
class ExtractionConfig:
    """
    Settings for the imbalance episode extraction.

    ``touch_volume`` converts normalized volumes into contract targets; when
    it is None the session's own time-weighted touch is used.
    """

    overshoot_tol: float = DEFAULT_OVERSHOOT_TOL
    v_grid: tuple[float, ...] = field(default_factory=volume_grid)
    touch_volume: float | None = None
    require_post_quote: bool = True

    def __post_init__(self) -> None:
        if not self.overshoot_tol > 0:
            raise ConfigInvalidError(
                f"overshoot_tol must be positive, got {self.overshoot_tol}", key="overshoot_tol"
            )
        if any(v <= 0 for v in self.v_grid):
            raise ConfigInvalidError("v_grid values must be positive", key="v_grid")
        if any(b <= a for a, b in zip(self.v_grid, self.v_grid[1:], strict=False)):
            raise ConfigInvalidError("v_grid must be strictly increasing", key="v_grid")
        if self.touch_volume is not None and not self.touch_volume > 0:
            raise ConfigInvalidError(
                f"touch_volume must be positive, got {self.touch_volume}", key="touch_volume"
            )

    @classmethod
    def from_grid(
        cls,
        v_step: float = DEFAULT_V_STEP,
        v_max: float = DEFAULT_V_MAX,
        overshoot_tol: float = DEFAULT_OVERSHOOT_TOL,
        require_post_quote: bool = True,
    ) -> Self:
        return cls(
            overshoot_tol=overshoot_tol,
            v_grid=volume_grid(v_step, v_max),
            require_post_quote=require_post_quote,
        )

    def with_touch(self, touch_volume: float) -> ExtractionConfig:
        return replace(self, touch_volume=touch_volume)

    def targets(self, touch_volume: float | None = None) -> dict[float, int]:
        """Contract target per grid point."""
        touch = self.touch_volume if touch_volume is None else touch_volume
        if touch is None:
            raise ConfigInvalidError("touch volume is not known yet", key="touch_volume")
        return {v: target_for(v, touch) for v in self.v_grid}
