"""
Analysis artifact writer.

Writes the plot-ready CSV files and the ``key = value`` regression summary.
Numbers are rendered locale-free with ``.`` as decimal separator so repeated
runs produce identical bytes.
"""

from __future__ import annotations

import csv
import math
from collections.abc import Iterable, Mapping, Sequence
from pathlib import Path
from typing import TYPE_CHECKING

from jinja2 import Environment, PackageLoader, StrictUndefined

from tick2impact.infrastructure.analytics.imbalance import episode_participation
from tick2impact.shared.constants import (
    BIN_COLUMNS,
    EPISODE_COLUMNS,
    HISTOGRAM_COLUMNS,
    TABLE_COLUMNS,
    TRUTH_COLUMNS,
)
from tick2impact.shared.logging import get_logger
from tick2impact.shared.result import Err, Ok, Result

if TYPE_CHECKING:
    from tick2impact.domain.entities.episode import ImbalanceEpisode
    from tick2impact.domain.entities.ground_truth import GroundTruthRecord
    from tick2impact.domain.entities.statistics import VolumeBinStats

logger = get_logger("writer")

Row = Sequence[object]


def format_value(value: object) -> str:
    """Render one cell: booleans as true/false, floats with up to 12 significant digits."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, ".12g")
    return str(value)


class ArtifactWriter:
    """
    Writer for analysis and simulation artifacts.

    Implements IArtifactSink; every method returns the written path or an
    error message instead of raising.
    """

    def __init__(self) -> None:
        self._env = Environment(
            loader=PackageLoader("tick2impact.infrastructure.writing", "templates"),
            undefined=StrictUndefined,
            keep_trailing_newline=True,
            trim_blocks=True,
            lstrip_blocks=True,
            autoescape=False,
        )

    def _write_rows(self, path: Path, header: Sequence[str], rows: Iterable[Row]) -> Result[Path, str]:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with path.open("w", encoding="utf-8", newline="") as handle:
                writer = csv.writer(handle, lineterminator="\n")
                writer.writerow(header)
                count = 0
                for row in rows:
                    writer.writerow([format_value(cell) for cell in row])
                    count += 1
            logger.debug(f"Wrote {count} rows to {path}")
            return Ok(path)
        except OSError as e:
            logger.exception(f"Failed to write {path}")
            return Err(f"Write error: {e}")

    def write_episodes(
        self, episodes: Mapping[float, Sequence[ImbalanceEpisode]], path: Path
    ) -> Result[Path, str]:
        """Write every terminated episode, accepted or not, grouped by volume."""
        rows = (
            (
                v,
                e.target,
                e.direction.label,
                e.imbalance,
                e.impact,
                e.duration_ns,
                e.total_traded,
                episode_participation(e),
                e.accepted,
            )
            for v in sorted(episodes)
            for e in episodes[v]
        )
        return self._write_rows(path, EPISODE_COLUMNS, rows)

    def write_bins(self, bins: Sequence[VolumeBinStats], path: Path) -> Result[Path, str]:
        rows = (
            (
                b.v,
                b.target,
                b.n,
                b.mean_impact,
                b.sd_impact,
                b.q1,
                b.median,
                b.q3,
                len(b.outliers),
                " ".join(format_value(x) for x in b.outliers),
                b.estimate,
                b.median_participation,
                b.mean_duration_s,
                b.mean_duration_raw_s,
                b.median_duration_s,
                b.q1_duration_s,
                b.q3_duration_s,
                b.zero_time_fraction,
                b.trading_rate,
                b.median_trading_rate,
                b.sparse,
            )
            for b in bins
        )
        return self._write_rows(path, BIN_COLUMNS, rows)

    def write_histogram(self, bins: Sequence[VolumeBinStats], path: Path) -> Result[Path, str]:
        rows = ((b.v, impact, count) for b in bins for impact, count in b.histogram.items())
        return self._write_rows(path, HISTOGRAM_COLUMNS, rows)

    def write_truth(self, truth: Sequence[GroundTruthRecord], path: Path) -> Result[Path, str]:
        rows = (
            (r.episode_id, r.t_start_ns, r.t_end_ns, r.target, r.style, r.true_participation)
            for r in truth
        )
        return self._write_rows(path, TRUTH_COLUMNS, rows)

    def write_table(self, rows: Iterable[Mapping[str, object]], path: Path) -> Result[Path, str]:
        """Write the multi-instrument regression table."""
        return self._write_rows(path, TABLE_COLUMNS, ([row[c] for c in TABLE_COLUMNS] for row in rows))

    def render_summary(self, values: Mapping[str, object]) -> str:
        template = self._env.get_template("summary.txt.j2")
        return template.render(values={k: format_value(v) for k, v in values.items()})

    def write_summary(self, values: Mapping[str, object], path: Path) -> Result[Path, str]:
        """Write the regression summary as ``key = value`` lines."""
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(self.render_summary(values), encoding="utf-8")
            return Ok(path)
        except OSError as e:
            logger.exception(f"Failed to write {path}")
            return Err(f"Write error: {e}")
