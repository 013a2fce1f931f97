"""
Domain layer - Core market entities and value objects.

This layer has no third-party dependencies and defines the data
structures and protocols used throughout the application.
"""

from tick2impact.domain.entities import (
    BookState,
    EventKind,
    ImbalanceEpisode,
    Level1Event,
    ParticipationCurve,
    RegressionResult,
    SessionDescriptor,
    VolumeBinStats,
    apply_event,
)
from tick2impact.domain.value_objects import (
    Direction,
    ExtractionConfig,
    TickGrid,
    TradeSign,
)

__all__ = [
    # Entities
    "BookState",
    "EventKind",
    "ImbalanceEpisode",
    "Level1Event",
    "ParticipationCurve",
    "RegressionResult",
    "SessionDescriptor",
    "VolumeBinStats",
    "apply_event",
    # Value Objects
    "Direction",
    "ExtractionConfig",
    "TickGrid",
    "TradeSign",
]
