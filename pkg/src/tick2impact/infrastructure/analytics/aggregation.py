"""
Per-volume aggregation of accepted episodes.

Quartiles use linear interpolation between order statistics. Impact
outliers lie outside either 1.5 IQR fence; the trimmed duration mean drops
only points above the upper fence. Medians are always taken on raw data.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Mapping, Sequence

import numpy as np
from numpy.typing import ArrayLike

from tick2impact.domain.entities.episode import ImbalanceEpisode
from tick2impact.domain.entities.statistics import VolumeBinStats
from tick2impact.infrastructure.analytics.imbalance import episode_participation
from tick2impact.shared.constants import DEFAULT_MIN_COUNT, IQR_FENCE
from tick2impact.shared.logging import get_logger

logger = get_logger("aggregation")


def quartiles(values: ArrayLike) -> tuple[float, float, float]:
    """First quartile, median and third quartile (linear interpolation)."""
    q1, median, q3 = np.quantile(np.asarray(values, dtype=float), [0.25, 0.5, 0.75], method="linear")
    return float(q1), float(median), float(q3)


def iqr_fences(q1: float, q3: float, k: float = IQR_FENCE) -> tuple[float, float]:
    """Lower and upper Tukey fences."""
    spread = q3 - q1
    return q1 - k * spread, q3 + k * spread


def _rate(volume: int, seconds: float) -> float:
    return volume / seconds if seconds > 0 else 0.0


def bin_statistics(
    v: float, target: int, episodes: Sequence[ImbalanceEpisode], min_count: int = DEFAULT_MIN_COUNT
) -> VolumeBinStats:
    """
    Statistics of one non-empty set of accepted episodes.

    Raises:
        ValueError: ``episodes`` is empty
    """
    if not episodes:
        raise ValueError(f"no episodes at v={v}")
    n = len(episodes)

    impacts = np.fromiter((e.impact for e in episodes), dtype=float, count=n)
    q1, median, q3 = quartiles(impacts)
    low, high = iqr_fences(q1, q3)
    outliers = tuple(sorted(float(x) for x in impacts if x < low or x > high))
    histogram = Counter(round(float(x) * 2) / 2 for x in impacts)

    participation = np.fromiter((episode_participation(e) for e in episodes), dtype=float, count=n)

    durations_ns = np.fromiter((e.duration_ns for e in episodes), dtype=np.int64, count=n)
    durations = np.fromiter((e.duration_s for e in episodes), dtype=float, count=n)
    d_q1, d_median, d_q3 = quartiles(durations)
    trimmed = durations[durations <= iqr_fences(d_q1, d_q3)[1]]
    mean_duration = float(trimmed.mean()) if trimmed.size else float(durations.mean())

    return VolumeBinStats(
        v=v,
        target=target,
        n=n,
        mean_impact=float(impacts.mean()),
        sd_impact=float(impacts.std(ddof=1)) if n > 1 else 0.0,
        q1=q1,
        median=median,
        q3=q3,
        outliers=outliers,
        histogram=dict(sorted(histogram.items())),
        median_participation=float(np.median(participation)),
        mean_duration_s=mean_duration,
        mean_duration_raw_s=float(durations.mean()),
        median_duration_s=d_median,
        q1_duration_s=d_q1,
        q3_duration_s=d_q3,
        zero_time_fraction=float(np.mean(durations_ns == 0)),
        trading_rate=_rate(target, mean_duration),
        median_trading_rate=_rate(target, d_median),
        sparse=n < min_count,
    )


def aggregate_bins(
    episodes_by_v: Mapping[float, Sequence[ImbalanceEpisode]],
    min_count: int = DEFAULT_MIN_COUNT,
) -> list[VolumeBinStats]:
    """
    One bin per volume that has at least one accepted episode, in volume order.

    Rejected episodes are ignored. Bins under ``min_count`` episodes are kept
    and marked sparse.
    """
    bins: list[VolumeBinStats] = []
    for v in sorted(episodes_by_v):
        accepted = [e for e in episodes_by_v[v] if e.accepted]
        if not accepted:
            continue
        stats = bin_statistics(v, accepted[0].target, accepted, min_count)
        if stats.sparse:
            logger.debug(f"v={v}: only {stats.n} episodes, bin marked sparse")
        bins.append(stats)
    return bins
