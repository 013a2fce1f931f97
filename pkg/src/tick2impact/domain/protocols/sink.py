"""
Artifact sink protocol.

Defines the interface for persisting analysis outputs.
"""

from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING, Protocol, runtime_checkable

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence

    from tick2impact.domain.entities.episode import ImbalanceEpisode
    from tick2impact.domain.entities.statistics import VolumeBinStats
    from tick2impact.shared.result import Result


@runtime_checkable
class IArtifactSink(Protocol):
    """Writes the plot-ready files of one analysis run."""

    def write_episodes(
        self, episodes: Mapping[float, Sequence[ImbalanceEpisode]], path: Path
    ) -> Result[Path, str]:
        """Write the per-episode dump."""
        ...

    def write_bins(self, bins: Sequence[VolumeBinStats], path: Path) -> Result[Path, str]:
        """Write one row per volume bin."""
        ...

    def write_histogram(self, bins: Sequence[VolumeBinStats], path: Path) -> Result[Path, str]:
        """Write impact histograms keyed by volume and half-tick value."""
        ...

    def write_summary(self, values: Mapping[str, object], path: Path) -> Result[Path, str]:
        """Write the key = value regression summary."""
        ...
