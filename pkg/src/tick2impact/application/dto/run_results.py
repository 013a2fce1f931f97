"""
Run result DTOs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING

from tick2impact.infrastructure.analytics.regression import lambda_error
from tick2impact.shared.constants import ESTIMATED_SLOPE_TICKS
from tick2impact.shared.logging import RunDiagnostics

if TYPE_CHECKING:
    from collections.abc import Sequence

    from tick2impact.domain.entities.episode import ImbalanceEpisode
    from tick2impact.domain.entities.session import SessionDescriptor
    from tick2impact.domain.entities.statistics import (
        ParticipationCurve,
        RegressionResult,
        VolumeBinStats,
    )
    from tick2impact.infrastructure.simulation.market import SimulatedSession


@dataclass
class AnalysisResult:
    """
    Everything one analysis run produced.

    ``regression`` is None when too few non-sparse bins were available; the
    reason is among the diagnostics' warnings.
    """

    descriptor: SessionDescriptor
    touch_volume: float
    targets: dict[float, int] = field(default_factory=dict)
    episodes: dict[float, Sequence[ImbalanceEpisode]] = field(default_factory=dict)
    bins: list[VolumeBinStats] = field(default_factory=list)
    regression: RegressionResult | None = None
    curve: ParticipationCurve | None = None
    diagnostics: RunDiagnostics = field(default_factory=RunDiagnostics)
    artifacts: list[Path] = field(default_factory=list)

    # Run parameters echoed into the summary
    v_step: float = math.nan
    overshoot_tol: float = math.nan
    min_count: int = 0
    weighted: bool = False

    # Timing
    scan_time_ms: float = 0
    stats_time_ms: float = 0
    write_time_ms: float = 0

    @property
    def total_time_ms(self) -> float:
        return self.scan_time_ms + self.stats_time_ms + self.write_time_ms

    @property
    def episode_count(self) -> int:
        return sum(len(v) for v in self.episodes.values())

    @property
    def accepted_count(self) -> int:
        return sum(1 for eps in self.episodes.values() for e in eps if e.accepted)

    @property
    def fit_bins(self) -> list[VolumeBinStats]:
        return [b for b in self.bins if not b.sparse]

    def summary_values(self) -> dict[str, object]:
        """Values of the ``key = value`` summary file, in file order."""
        fit = self.regression
        nan = math.nan
        curve = self.curve
        return {
            "instrument": self.descriptor.instrument,
            "tick_size": str(self.descriptor.tick_size),
            "touch": self.touch_volume,
            "v_step": self.v_step,
            "v_max": max(self.targets) if self.targets else nan,
            "episodes": self.episode_count,
            "accepted": self.accepted_count,
            "bins": len(self.bins),
            "fit_bins": len(self.fit_bins),
            "overshoot_tol": self.overshoot_tol,
            "min_count": self.min_count,
            "weighted": self.weighted,
            "fit": "ok" if fit else "unavailable",
            "mu": fit.mu if fit else nan,
            "lambda": fit.lam if fit else nan,
            "lambda_estimate": ESTIMATED_SLOPE_TICKS,
            "lambda_err_pct": fit.lambda_err if fit else nan,
            "r2": fit.r2 if fit else nan,
            "p_value": fit.p_value if fit else nan,
            "slope_stderr": fit.slope_stderr if fit else nan,
            "part_rate": curve.asymptote if curve else nan,
            "part_rate_v": curve.asymptote_v if curve else nan,
        }

    def __str__(self) -> str:
        if self.regression:
            return f"{self.descriptor.instrument}: {self.regression}"
        return f"{self.descriptor.instrument}: no regression ({len(self.bins)} bins)"


@dataclass
class SimulationResult:
    """A generated session and where it was written."""

    session: SimulatedSession
    artifacts: list[Path] = field(default_factory=list)
    generate_time_ms: float = 0
    write_time_ms: float = 0

    @property
    def total_time_ms(self) -> float:
        return self.generate_time_ms + self.write_time_ms


@dataclass(frozen=True, slots=True)
class ReportRow:
    """One instrument's line of the regression table."""

    instrument: str
    touch: float
    delta: float
    mu: float
    lam: float
    r2: float
    p_value: float
    part_rate: float
    concave: bool = False

    @property
    def lambda_err(self) -> float:
        return lambda_error(self.lam)

    def as_table_row(self) -> dict[str, object]:
        return {
            "RIC": self.instrument,
            "touch": self.touch,
            "delta": self.delta,
            "mu": self.mu,
            "lambda": self.lam,
            "lambda_err_pct": self.lambda_err,
            "r2": self.r2,
            "p_value": self.p_value,
            "part_rate": self.part_rate,
        }


@dataclass
class ReportResult:
    """The merged table and where it was written."""

    rows: list[ReportRow] = field(default_factory=list)
    output_path: Path | None = None

    @property
    def concave_rows(self) -> list[ReportRow]:
        return [r for r in self.rows if r.concave]
