"""
Linear impact model and the half-tick estimator.

``fit_linear`` regresses bin mean impact on normalized volume,
``I = mu + lambda * v``, and tests the slope with a two-sided t-test on
``n - 2`` degrees of freedom.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np
from scipy import stats

from tick2impact.domain.entities.statistics import (
    ParticipationCurve,
    RegressionResult,
    VolumeBinStats,
)
from tick2impact.shared.constants import ESTIMATED_SLOPE_TICKS
from tick2impact.shared.exceptions import DegenerateDesignError, InsufficientDataError
from tick2impact.shared.logging import get_logger

logger = get_logger("regression")

Point = tuple[float, float, int]


def _points(bins: Sequence[VolumeBinStats | Point]) -> list[Point]:
    return [
        (b.v, b.mean_impact, b.n) if isinstance(b, VolumeBinStats) else (b[0], b[1], b[2])
        for b in bins
    ]


def fit_linear(bins: Sequence[VolumeBinStats | Point], weighted: bool = False) -> RegressionResult:
    """
    Least-squares line through the bin means.

    Args:
        bins: Volume bins or ``(v, mean_impact, n)`` points
        weighted: Weight each point by its episode count

    Raises:
        InsufficientDataError: fewer than three points
        DegenerateDesignError: every point has the same volume
    """
    points = _points(bins)
    if len(points) < 3:
        raise InsufficientDataError("Linear fit needs at least 3 bins", required=3, got=len(points))

    v = np.array([p[0] for p in points], dtype=float)
    y = np.array([p[1] for p in points], dtype=float)
    w = np.array([p[2] for p in points], dtype=float) if weighted else np.ones_like(v)
    if np.all(v == v[0]):
        raise DegenerateDesignError()
    dof = len(points) - 2

    if np.all(y == y[0]):
        result = RegressionResult(
            mu=float(y[0]),
            lam=0.0,
            r2=1.0,
            p_value=1.0,
            slope_stderr=0.0,
            n_points=len(points),
            weighted=weighted,
        )
        logger.debug(f"Constant response: {result}")
        return result

    total = w.sum()
    v_bar = float((w * v).sum() / total)
    y_bar = float((w * y).sum() / total)
    dv = v - v_bar
    dy = y - y_bar
    sxx = float((w * dv * dv).sum())
    lam = float((w * dv * dy).sum()) / sxx
    mu = y_bar - lam * v_bar

    residuals = y - (mu + lam * v)
    sse = float((w * residuals * residuals).sum())
    sst = float((w * dy * dy).sum())
    r2 = min(1.0, max(0.0, 1.0 - sse / sst))

    stderr = float(np.sqrt(sse / dof / sxx))
    if stderr == 0.0:
        p_value = 1.0 if lam == 0.0 else 0.0
    else:
        p_value = float(2 * stats.t.sf(abs(lam / stderr), dof))

    result = RegressionResult(
        mu=mu,
        lam=lam,
        r2=r2,
        p_value=min(1.0, p_value),
        slope_stderr=stderr,
        n_points=len(points),
        weighted=weighted,
    )
    logger.debug(f"Fit: {result}")
    return result


def estimate_impact(v: float) -> float:
    """Estimated impact in ticks of normalized volume ``v``: half a tick per touch."""
    return ESTIMATED_SLOPE_TICKS * v


def estimate_impact_price(v: float, delta: float) -> float:
    """Estimated impact in currency, ``delta / 2 * v``."""
    return delta / 2 * v


def lambda_error(lam: float) -> float:
    """Percentage difference between a fitted slope and the half-tick estimate."""
    return abs(lam - ESTIMATED_SLOPE_TICKS) / ESTIMATED_SLOPE_TICKS * 100


def participation_curve(bins: Sequence[VolumeBinStats]) -> ParticipationCurve:
    """Median participation per volume; the asymptote is the value at the largest volume."""
    if not bins:
        return ParticipationCurve()
    points = tuple(sorted((b.v, b.median_participation) for b in bins))
    asymptote_v, asymptote = points[-1]
    return ParticipationCurve(points=points, asymptote=asymptote, asymptote_v=asymptote_v)
