"""
Synthetic market: configuration, agents, the event loop and replay checks.
"""

from tick2impact.infrastructure.simulation.config import (
    InformedStyle,
    InformedTraderConfig,
    SimConfig,
    load_sim_config,
    sim_config_from_mapping,
)
from tick2impact.infrastructure.simulation.market import (
    SimulatedBook,
    SimulatedMarket,
    SimulatedSession,
    generate_session,
)
from tick2impact.infrastructure.simulation.replay import (
    ReplayDiagnostics,
    Violation,
    replay_check,
    replay_events,
)

__all__ = [
    "InformedStyle",
    "InformedTraderConfig",
    "ReplayDiagnostics",
    "SimConfig",
    "SimulatedBook",
    "SimulatedMarket",
    "SimulatedSession",
    "Violation",
    "generate_session",
    "load_sim_config",
    "replay_check",
    "replay_events",
    "sim_config_from_mapping",
]
