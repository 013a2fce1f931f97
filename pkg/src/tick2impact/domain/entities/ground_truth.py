"""
Ground-truth labels of simulated informed episodes.
"""

from __future__ import annotations

from dataclasses import dataclass

from tick2impact.domain.value_objects.trade_sign import Direction


@dataclass(frozen=True, slots=True)
class GroundTruthRecord:
    """
    One informed episode as the simulator executed it.

    ``total_volume`` counts every contract traded between the episode's start
    and its last child order, the informed volume included.
    """

    episode_id: int
    t_start_ns: int
    t_end_ns: int
    target: int
    style: str
    direction: Direction
    informed_volume: int
    total_volume: int

    @property
    def true_participation(self) -> float:
        if self.total_volume == 0:
            return 0.0
        return self.informed_volume / self.total_volume
