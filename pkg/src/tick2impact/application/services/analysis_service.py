"""
Analysis service.

Orchestrates the per-instrument pipeline: one pass over the session for the
touch volume and the trade tape, one state machine per grid volume,
aggregation into bins, the linear fit and the artifact files.
"""

from __future__ import annotations

import time
from pathlib import Path
from typing import TYPE_CHECKING

from tick2impact.application.dto.run_options import AnalysisOptions
from tick2impact.application.dto.run_results import AnalysisResult
from tick2impact.infrastructure.analytics.aggregation import aggregate_bins
from tick2impact.infrastructure.analytics.imbalance import episodes_by_volume
from tick2impact.infrastructure.analytics.regression import fit_linear, participation_curve
from tick2impact.infrastructure.analytics.tape import scan_session
from tick2impact.infrastructure.parsing.descriptor import read_descriptor
from tick2impact.infrastructure.parsing.tick_format import TickFile
from tick2impact.infrastructure.simulation.replay import ReplayDiagnostics, replay_check
from tick2impact.infrastructure.writing.artifact_writer import ArtifactWriter
from tick2impact.shared.constants import (
    BINS_FILE,
    EPISODES_FILE,
    HISTOGRAM_FILE,
    SUMMARY_FILE,
)
from tick2impact.shared.exceptions import (
    ArtifactError,
    ConfigInvalidError,
    EmptySessionError,
    StatisticsError,
    Tick2ImpactError,
)
from tick2impact.shared.logging import RunDiagnostics, get_logger
from tick2impact.shared.result import Err, Ok, Result, collect_results

if TYPE_CHECKING:
    from tick2impact.domain.protocols.sink import IArtifactSink
    from tick2impact.domain.protocols.source import IEventSource

logger = get_logger("service.analysis")


def _elapsed_ms(start: float) -> float:
    return (time.perf_counter() - start) * 1000


class AnalysisService:
    """
    Measures the market impact of trade imbalances for one instrument.

    Errors never escape: every entry point returns a Result.
    """

    def __init__(self, writer: IArtifactSink | None = None) -> None:
        self._writer: IArtifactSink = writer or ArtifactWriter()

    def analyze(self, options: AnalysisOptions) -> Result[AnalysisResult, Tick2ImpactError]:
        """
        Analyze a tick file described by its sidecar.

        Args:
            options: Input paths, grid and statistics settings

        Returns:
            Ok with the analysis, or Err with the configuration or data error
        """
        try:
            options.validate()
            assert options.ticks_path is not None and options.descriptor_path is not None
            descriptor = read_descriptor(options.descriptor_path)
            logger.info(f"Analyzing {options.ticks_path} ({descriptor})")
            return Ok(self._run(TickFile(options.ticks_path, descriptor), options))
        except Tick2ImpactError as e:
            logger.debug(f"Analysis failed: {e}")
            return Err(e)

    def analyze_source(
        self, source: IEventSource, options: AnalysisOptions | None = None
    ) -> Result[AnalysisResult, Tick2ImpactError]:
        """Analyze any event source, e.g. a session held in memory."""
        try:
            return Ok(self._run(source, options or AnalysisOptions()))
        except Tick2ImpactError as e:
            logger.debug(f"Analysis failed: {e}")
            return Err(e)

    def check(self, ticks_path: Path, descriptor_path: Path) -> Result[ReplayDiagnostics, Tick2ImpactError]:
        """Replay a tick file and collect every format or book violation."""
        try:
            descriptor = read_descriptor(descriptor_path)
            with ticks_path.open("rb") as handle:
                return Ok(replay_check(handle, descriptor))
        except FileNotFoundError:
            return Err(ConfigInvalidError(f"ticks does not exist: {ticks_path}", key="ticks"))
        except Tick2ImpactError as e:
            return Err(e)

    def _run(self, source: IEventSource, options: AnalysisOptions) -> AnalysisResult:
        cfg = options.extraction_config()
        diagnostics = RunDiagnostics(verbose=options.verbose)

        # Step 1: single pass over the session
        start = time.perf_counter()
        tape = scan_session(source)
        diagnostics.merge_counts(dict(tape.counters))
        if tape.touch is None:
            raise EmptySessionError(f"{source.descriptor.instrument}: session has no valid quote")
        episodes = episodes_by_volume(tape, cfg.v_grid, cfg, diagnostics)
        scan_ms = _elapsed_ms(start)
        logger.info(
            f"Touch volume {tape.touch:.3f}, {len(tape)} trades, "
            f"{sum(len(e) for e in episodes.values())} episodes over {len(cfg.v_grid)} volumes"
        )
        if not len(tape):
            diagnostics.add_warning("Session has no trades after the opening quote")
        outside = {
            side: diagnostics.counters[f"events_{side}_session"]
            for side in ("before", "after")
            if diagnostics.counters[f"events_{side}_session"]
        }
        if outside:
            diagnostics.add_warning("Events outside the session bounds were skipped", outside)
        if diagnostics.counters["dropped_episodes"]:
            diagnostics.add_warning(
                "Episodes without a post-trade quote were dropped",
                {"count": diagnostics.counters["dropped_episodes"]},
            )

        # Step 2: bins, fit and participation
        start = time.perf_counter()
        bins = aggregate_bins(episodes, options.min_count)
        sparse = [b.v for b in bins if b.sparse]
        if sparse:
            diagnostics.add_warning(
                f"{len(sparse)} bins below {options.min_count} episodes left out of the fit",
                {"v": sparse},
            )
        fit_bins = [b for b in bins if not b.sparse]
        regression = None
        try:
            regression = fit_linear(fit_bins, weighted=options.weighted)
            logger.info(f"Fit: {regression}")
        except StatisticsError as e:
            diagnostics.add_warning(f"No regression: {e}")
        curve = participation_curve(fit_bins or bins)
        stats_ms = _elapsed_ms(start)

        result = AnalysisResult(
            descriptor=source.descriptor,
            touch_volume=tape.touch,
            targets=cfg.targets(tape.touch),
            episodes=episodes,
            bins=bins,
            regression=regression,
            curve=curve,
            diagnostics=diagnostics,
            v_step=options.v_step,
            overshoot_tol=options.overshoot_tol,
            min_count=options.min_count,
            weighted=options.weighted,
            scan_time_ms=scan_ms,
            stats_time_ms=stats_ms,
        )

        # Step 3: artifacts
        if options.output_dir is not None:
            start = time.perf_counter()
            result.artifacts = self._write(result, options.output_dir)
            result.write_time_ms = _elapsed_ms(start)

        logger.info(f"Analysis complete in {result.total_time_ms:.0f}ms")
        return result

    def _write(self, result: AnalysisResult, output_dir: Path) -> list[Path]:
        writer = self._writer
        written = collect_results(
            [
                writer.write_episodes(result.episodes, output_dir / EPISODES_FILE),
                writer.write_bins(result.bins, output_dir / BINS_FILE),
                writer.write_histogram(result.bins, output_dir / HISTOGRAM_FILE),
                writer.write_summary(result.summary_values(), output_dir / SUMMARY_FILE),
            ]
        )
        if isinstance(written, Err):
            raise ArtifactError(written.error, path=str(output_dir))
        logger.info(f"Wrote {len(written.value)} artifacts to {output_dir}")
        return written.value
