"""
Statistical result entities: per-volume bins, the linear fit and the
participation curve.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from tick2impact.shared.constants import ESTIMATED_SLOPE_TICKS


@dataclass(frozen=True, slots=True)
class VolumeBinStats:
    """
    Aggregate of accepted episodes at one normalized volume ``v``.

    Impacts are in ticks, durations in seconds. ``histogram`` maps a half-tick
    impact value to its count. ``sparse`` marks bins below the minimum count;
    they are reported but left out of the fit.
    """

    v: float
    target: int
    n: int
    mean_impact: float
    sd_impact: float
    q1: float
    median: float
    q3: float
    outliers: tuple[float, ...]
    histogram: dict[float, int]
    median_participation: float
    mean_duration_s: float
    mean_duration_raw_s: float
    median_duration_s: float
    q1_duration_s: float
    q3_duration_s: float
    zero_time_fraction: float
    trading_rate: float
    median_trading_rate: float
    sparse: bool = False

    @property
    def estimate(self) -> float:
        """Estimated impact at this volume, 0.5 v ticks."""
        return ESTIMATED_SLOPE_TICKS * self.v


@dataclass(frozen=True, slots=True)
class RegressionResult:
    """
    Linear impact model ``I = mu + lambda * v`` and its comparison with the
    half-tick estimator.
    """

    mu: float
    lam: float
    r2: float
    p_value: float
    slope_stderr: float
    n_points: int
    weighted: bool = False
    lambda_estimate: float = ESTIMATED_SLOPE_TICKS

    @property
    def lambda_err(self) -> float:
        """Percentage difference between the fitted and the estimated slope."""
        return abs(self.lam - self.lambda_estimate) / self.lambda_estimate * 100

    def __str__(self) -> str:
        return (
            f"I = {self.mu:.3f} + {self.lam:.3f} v  "
            f"(R²={self.r2:.3f}, p={self.p_value:.2e}, λ_err={self.lambda_err:.1f}%)"
        )


@dataclass(frozen=True, slots=True)
class ParticipationCurve:
    """Median participation per volume and its large-volume asymptote."""

    points: tuple[tuple[float, float], ...] = field(default_factory=tuple)
    asymptote: float = float("nan")
    asymptote_v: float = float("nan")
