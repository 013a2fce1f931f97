"""
Value Objects - Immutable objects defined by their attributes.
"""

from tick2impact.domain.value_objects.extraction import (
    ExtractionConfig,
    target_for,
    volume_grid,
)
from tick2impact.domain.value_objects.tick_grid import TickGrid
from tick2impact.domain.value_objects.trade_sign import Direction, TradeSign

__all__ = [
    "Direction",
    "ExtractionConfig",
    "TickGrid",
    "TradeSign",
    "target_for",
    "volume_grid",
]
