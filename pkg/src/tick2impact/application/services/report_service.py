"""
Report service.

Merges the regression summaries of several analysis directories into one
table, one row per instrument.
"""

from __future__ import annotations

import math
from pathlib import Path

from tick2impact.application.dto.run_options import ReportOptions
from tick2impact.application.dto.run_results import ReportResult, ReportRow
from tick2impact.infrastructure.parsing.artifact_reader import read_summary
from tick2impact.infrastructure.writing.artifact_writer import ArtifactWriter
from tick2impact.shared.constants import DEFAULT_CONCAVE_INTERCEPT, SUMMARY_FILE
from tick2impact.shared.exceptions import ArtifactError, Tick2ImpactError
from tick2impact.shared.logging import get_logger
from tick2impact.shared.result import Err, Ok, Result

logger = get_logger("service.report")


def _number(values: dict[str, str], key: str, path: Path) -> float:
    try:
        return float(values[key])
    except KeyError:
        raise ArtifactError(f"Summary has no {key!r}", path=str(path)) from None
    except ValueError:
        raise ArtifactError(f"{key} is not a number: {values[key]!r}", path=str(path)) from None


def read_report_row(directory: Path, concave_intercept: float = DEFAULT_CONCAVE_INTERCEPT) -> ReportRow:
    """
    Table row from one analysis directory's summary.

    A row is flagged concave when its intercept exceeds ``concave_intercept``
    ticks. Instruments without a fit keep ``nan`` coefficients.

    Raises:
        ArtifactError: the summary is missing or lacks a value
    """
    path = directory / SUMMARY_FILE
    values = read_summary(path)
    if "instrument" not in values:
        raise ArtifactError("Summary has no 'instrument'", path=str(path))
    mu = _number(values, "mu", path)
    return ReportRow(
        instrument=values["instrument"],
        touch=_number(values, "touch", path),
        delta=_number(values, "tick_size", path),
        mu=mu,
        lam=_number(values, "lambda", path),
        r2=_number(values, "r2", path),
        p_value=_number(values, "p_value", path),
        part_rate=_number(values, "part_rate", path),
        concave=not math.isnan(mu) and mu > concave_intercept,
    )


class ReportService:
    """Builds the multi-instrument regression table."""

    def __init__(self, writer: ArtifactWriter | None = None) -> None:
        self._writer = writer or ArtifactWriter()

    def report(self, options: ReportOptions) -> Result[ReportResult, Tick2ImpactError]:
        try:
            options.validate()
            rows = [read_report_row(d, options.concave_intercept) for d in options.inputs]
            result = ReportResult(rows=rows)
            if options.output_path is not None:
                written = self._writer.write_table((r.as_table_row() for r in rows), options.output_path)
                if isinstance(written, Err):
                    raise ArtifactError(written.error, path=str(options.output_path))
                result.output_path = written.value
            logger.info(f"Report: {len(rows)} instruments, {len(result.concave_rows)} concave")
            return Ok(result)
        except Tick2ImpactError as e:
            logger.debug(f"Report failed: {e}")
            return Err(e)
