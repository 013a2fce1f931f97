"""
Domain entities - market events, book state, sessions, episodes and statistics.
"""

from tick2impact.domain.entities.book import (
    BookState,
    apply_event,
    quote_columns,
    quote_is_valid,
)
from tick2impact.domain.entities.episode import EpisodeBatch, ImbalanceEpisode
from tick2impact.domain.entities.events import EventColumns, EventKind, Level1Event
from tick2impact.domain.entities.ground_truth import GroundTruthRecord
from tick2impact.domain.entities.session import SessionDescriptor
from tick2impact.domain.entities.statistics import (
    ParticipationCurve,
    RegressionResult,
    VolumeBinStats,
)

__all__ = [
    "BookState",
    "EpisodeBatch",
    "EventColumns",
    "EventKind",
    "GroundTruthRecord",
    "ImbalanceEpisode",
    "Level1Event",
    "ParticipationCurve",
    "RegressionResult",
    "SessionDescriptor",
    "VolumeBinStats",
    "apply_event",
    "quote_columns",
    "quote_is_valid",
]
