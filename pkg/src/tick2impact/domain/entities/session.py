"""
Session descriptor entity.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal

from tick2impact.domain.value_objects.tick_grid import TickGrid
from tick2impact.shared.constants import NANOS_PER_SECOND
from tick2impact.shared.exceptions import ConfigInvalidError


@dataclass(frozen=True, slots=True)
class SessionDescriptor:
    """
    Instrument, tick size and trading-session bounds of one tick file.

    Episodes never span sessions, and the last quote interval of the session
    is weighted up to ``session_end_ns``.
    """

    instrument: str
    tick_size: Decimal
    session_start_ns: int
    session_end_ns: int

    def __post_init__(self) -> None:
        if not self.instrument.strip():
            raise ConfigInvalidError("instrument must not be empty", key="instrument")
        if not self.tick_size.is_finite() or self.tick_size <= 0:
            raise ConfigInvalidError(
                f"tick_size must be positive, got {self.tick_size}", key="tick_size"
            )
        if self.session_start_ns >= self.session_end_ns:
            raise ConfigInvalidError(
                "session_start_ns must be before session_end_ns", key="session_end_ns"
            )

    @property
    def grid(self) -> TickGrid:
        return TickGrid(self.tick_size)

    @property
    def delta(self) -> float:
        return float(self.tick_size)

    @property
    def duration_ns(self) -> int:
        return self.session_end_ns - self.session_start_ns

    @property
    def duration_s(self) -> float:
        return self.duration_ns / NANOS_PER_SECOND

    def __str__(self) -> str:
        return f"{self.instrument} (δ={self.tick_size}, {self.duration_s:.0f}s)"
