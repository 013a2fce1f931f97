"""
Trade-imbalance episode extraction.

A session is read once into a trade tape (see ``tape``). Each target volume
then runs its own state machine over the tape:

- Idle (``V_I = 0``): zero-sign trades are ignored; a signed trade anchors the
  run at the mid before it.
- Running: every trade adds to the window volume, signed trades move ``V_I``.
  A trade that lands ``V_I`` on zero or flips its sign ends the run without an
  episode and returns to idle.
- ``|V_I| >= V_T`` terminates the run; the episode's post price is the first
  valid quote after the terminating trade. Episodes whose overshoot exceeds
  the tolerance are kept with ``accepted=False``.

The machine itself is the compiled loop in ``kernels``.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence
from typing import TYPE_CHECKING

import numpy as np

from tick2impact.domain.entities.episode import EpisodeBatch, ImbalanceEpisode
from tick2impact.domain.value_objects.extraction import ExtractionConfig, target_for
from tick2impact.infrastructure.analytics.kernels import track_imbalance
from tick2impact.infrastructure.analytics.tape import SessionTape, scan_session
from tick2impact.shared.exceptions import ConfigInvalidError, ZeroVolumeWindowError
from tick2impact.shared.logging import get_logger

if TYPE_CHECKING:
    from tick2impact.domain.protocols.source import IEventSource
    from tick2impact.shared.logging import RunDiagnostics

logger = get_logger("imbalance")


class ImbalanceTracker:
    """State machine for one target volume ``V_T``."""

    def __init__(
        self,
        target: int,
        delta: float,
        overshoot_tol: float,
        require_post_quote: bool = True,
    ) -> None:
        if target < 1:
            raise ConfigInvalidError(f"target volume must be at least 1, got {target}", key="V_T")
        self.target = target
        self.delta = delta
        self.overshoot_tol = overshoot_tol
        self.require_post_quote = require_post_quote
        self.counters: Counter[str] = Counter()

    def run(self, tape: SessionTape) -> EpisodeBatch:
        """
        Extract the episodes of one tape.

        Episodes without a post quote use the tape's last valid mid when
        ``require_post_quote`` is off, and are dropped otherwise.

        Returns:
            Terminated episodes in time order, accepted or not
        """
        target = self.target
        last_mid = tape.last_mid_half
        imbalance, p0, post, first, last, total, resets, dropped = track_imbalance(
            tape.timestamps,
            tape.sizes,
            tape.signs,
            tape.mid_half,
            tape.post_half,
            tape.has_post,
            target,
            self.require_post_quote,
            0 if last_mid is None else last_mid,
            last_mid is not None,
        )
        accepted = (np.abs(imbalance) - target) / target <= self.overshoot_tol
        episodes = EpisodeBatch(
            target, self.delta, imbalance, p0, post, first, last, total, accepted
        )

        rejected = len(episodes) - episodes.accepted_count
        self.counters.update(
            {"zero_crossings": resets, "dropped_episodes": dropped, "rejected_episodes": rejected}
        )
        logger.debug(
            f"V_T={target}: {len(episodes)} episodes, {rejected} rejected, "
            f"{resets} zero crossings, {dropped} without post quote"
        )
        return episodes


def run_targets(
    tape: SessionTape,
    targets: Iterable[int],
    cfg: ExtractionConfig,
    diagnostics: RunDiagnostics | None = None,
) -> dict[int, EpisodeBatch]:
    """Run one independent tracker per distinct target over a tape."""
    results: dict[int, EpisodeBatch] = {}
    for target in sorted(set(targets)):
        tracker = ImbalanceTracker(
            target, tape.descriptor.delta, cfg.overshoot_tol, cfg.require_post_quote
        )
        results[target] = tracker.run(tape)
        if diagnostics is not None:
            diagnostics.merge_counts(dict(tracker.counters))
    return results


def episodes_by_volume(
    tape: SessionTape,
    v_grid: Sequence[float],
    cfg: ExtractionConfig,
    diagnostics: RunDiagnostics | None = None,
) -> dict[float, Sequence[ImbalanceEpisode]]:
    """
    Episodes per normalized volume, with ``V_T = round(v * touch)``.

    The touch comes from ``cfg.touch_volume`` when set, otherwise from the
    tape. A session without any valid quote yields empty lists.
    """
    touch = cfg.touch_volume if cfg.touch_volume is not None else tape.touch
    if touch is None:
        return {v: [] for v in v_grid}
    targets = {v: target_for(v, touch) for v in v_grid}
    runs = run_targets(tape, targets.values(), cfg, diagnostics)
    return {v: runs[target] for v, target in targets.items()}


def extract_episodes(
    source: IEventSource,
    target: int,
    cfg: ExtractionConfig | None = None,
    diagnostics: RunDiagnostics | None = None,
) -> EpisodeBatch:
    """
    Extract imbalance episodes of one session at target volume ``V_T``.

    Pathological sessions (no quotes, no trades) yield no episodes; what
    was skipped is reported through ``diagnostics``.
    """
    cfg = cfg or ExtractionConfig()
    tape = scan_session(source)
    if diagnostics is not None:
        diagnostics.merge_counts(dict(tape.counters))
    return run_targets(tape, [target], cfg, diagnostics)[target]


def fused_multi_target_scan(
    source: IEventSource,
    v_grid: Sequence[float] | None = None,
    cfg: ExtractionConfig | None = None,
    diagnostics: RunDiagnostics | None = None,
) -> dict[float, Sequence[ImbalanceEpisode]]:
    """
    Episodes for every grid volume from a single pass over the session.

    Each grid point's output equals an independent ``extract_episodes`` run
    at that point's target.
    """
    cfg = cfg or ExtractionConfig()
    grid = tuple(cfg.v_grid if v_grid is None else v_grid)
    tape = scan_session(source)
    if diagnostics is not None:
        diagnostics.merge_counts(dict(tape.counters))
    return episodes_by_volume(tape, grid, cfg, diagnostics)


def episode_participation(episode: ImbalanceEpisode) -> float:
    """
    Share of the window's traded volume explained by the imbalance.

    Raises:
        ZeroVolumeWindowError: the episode window has no traded volume
    """
    if episode.total_traded <= 0:
        raise ZeroVolumeWindowError()
    return min(1.0, abs(episode.imbalance) / episode.total_traded)
