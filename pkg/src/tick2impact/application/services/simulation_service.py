"""
Simulation service.

Generates a synthetic session and writes it in the canonical tick format,
with its descriptor sidecar and the informed-episode labels.
"""

from __future__ import annotations

import time
from pathlib import Path

from tick2impact.application.dto.run_options import SimulationOptions
from tick2impact.application.dto.run_results import SimulationResult
from tick2impact.infrastructure.parsing.descriptor import write_descriptor
from tick2impact.infrastructure.parsing.tick_format import write_tick_file
from tick2impact.infrastructure.simulation.config import SimConfig, load_sim_config
from tick2impact.infrastructure.simulation.market import generate_session
from tick2impact.infrastructure.writing.artifact_writer import ArtifactWriter
from tick2impact.shared.constants import DESCRIPTOR_FILE, SESSION_FILE, TRUTH_FILE
from tick2impact.shared.exceptions import ArtifactError, Tick2ImpactError
from tick2impact.shared.logging import get_logger
from tick2impact.shared.result import Err, Ok, Result

logger = get_logger("service.simulation")


class SimulationService:
    """Runs the synthetic market and stores its output."""

    def __init__(self, writer: ArtifactWriter | None = None) -> None:
        self._writer = writer or ArtifactWriter()

    def simulate(self, options: SimulationOptions) -> Result[SimulationResult, Tick2ImpactError]:
        try:
            options.validate()
            config = load_sim_config(options.config_path)
            return Ok(self.run(config, options.output_dir, header=options.header))
        except Tick2ImpactError as e:
            logger.debug(f"Simulation failed: {e}")
            return Err(e)

    def run(self, config: SimConfig, output_dir: Path | None = None, header: bool = True) -> SimulationResult:
        """
        Generate one session and, when ``output_dir`` is given, write it.

        Raises:
            ArtifactError: an output file cannot be written
        """
        start = time.perf_counter()
        session = generate_session(config)
        result = SimulationResult(session=session, generate_time_ms=(time.perf_counter() - start) * 1000)
        if output_dir is None:
            return result

        start = time.perf_counter()
        session_path = output_dir / SESSION_FILE
        try:
            write_tick_file(session_path, session.events, session.descriptor.grid, header=header)
            descriptor_path = write_descriptor(session.descriptor, output_dir / DESCRIPTOR_FILE)
        except OSError as e:
            raise ArtifactError(f"Write error: {e}", path=str(output_dir)) from e

        truth = self._writer.write_truth(session.truth, output_dir / TRUTH_FILE)
        if isinstance(truth, Err):
            raise ArtifactError(truth.error, path=str(output_dir / TRUTH_FILE))

        result.artifacts = [session_path, descriptor_path, truth.value]
        result.write_time_ms = (time.perf_counter() - start) * 1000
        logger.info(f"Wrote {len(session.events)} events to {session_path}")
        return result
