"""
Analytics: touch volume, trade signs, imbalance episodes and their statistics.
"""

from tick2impact.infrastructure.analytics.aggregation import aggregate_bins, quartiles
from tick2impact.infrastructure.analytics.classifier import classify_trade
from tick2impact.infrastructure.analytics.imbalance import (
    ImbalanceTracker,
    episode_participation,
    episodes_by_volume,
    extract_episodes,
    fused_multi_target_scan,
)
from tick2impact.infrastructure.analytics.regression import (
    estimate_impact,
    estimate_impact_price,
    fit_linear,
    lambda_error,
    participation_curve,
)
from tick2impact.infrastructure.analytics.tape import SessionTape, TapeBuilder, scan_session
from tick2impact.infrastructure.analytics.touch import TouchAccumulator, time_weighted_touch

__all__ = [
    "ImbalanceTracker",
    "SessionTape",
    "TapeBuilder",
    "TouchAccumulator",
    "aggregate_bins",
    "classify_trade",
    "episode_participation",
    "episodes_by_volume",
    "estimate_impact",
    "estimate_impact_price",
    "extract_episodes",
    "fit_linear",
    "fused_multi_target_scan",
    "lambda_error",
    "participation_curve",
    "quartiles",
    "scan_session",
    "time_weighted_touch",
]
