"""
Imbalance episode entities.

An episode is one completed run of the imbalance state machine: signed trade
volume accumulated from an equilibrium start until it reaches the target.
"""

from __future__ import annotations

import operator
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from typing import TYPE_CHECKING, overload

import numpy as np

from tick2impact.domain.value_objects.trade_sign import Direction
from tick2impact.shared.constants import NANOS_PER_SECOND

if TYPE_CHECKING:
    from numpy.typing import NDArray
@dataclass(frozen=True, slots=True)
class ImbalanceEpisode:
    """
    A terminated imbalance run with its price response.

    Prices are stored as integer half ticks; ``delta`` converts them back to
    currency. ``total_traded`` is the unsigned volume of every trade in the
    window, including trades between the quotes.
    """

    target: int
    imbalance: int
    p0_half_ticks: int
    post_half_ticks: int
    delta: float
    t_first_trade: int
    t_last_trade: int
    total_traded: int
    accepted: bool

    @property
    def direction(self) -> Direction:
        return Direction.of(self.imbalance)

    @property
    def impact(self) -> float:
        """Direction-adjusted mid move in ticks (a multiple of 0.5)."""
        return self.direction * (self.post_half_ticks - self.p0_half_ticks) / 2

    @property
    def duration_ns(self) -> int:
        return self.t_last_trade - self.t_first_trade

    @property
    def duration_s(self) -> float:
        return self.duration_ns / NANOS_PER_SECOND

    @property
    def overshoot(self) -> float:
        """Relative excess of the imbalance over the target."""
        return (abs(self.imbalance) - self.target) / self.target

    def __str__(self) -> str:
        flag = "" if self.accepted else " (rejected)"
        return (
            f"{self.direction.label} V_I={self.imbalance}/{self.target} "
            f"impact={self.impact:+.1f}t T={self.duration_s:.3f}s{flag}"
        )


class EpisodeBatch(Sequence[ImbalanceEpisode]):
    """
    The episodes of one target volume, stored column-wise.

    Behaves as a read-only list of ``ImbalanceEpisode``; items are built when
    accessed. Compares equal to any sequence holding the same episodes.
    """

    __slots__ = (
        "accepted",
        "delta",
        "imbalance",
        "p0_half_ticks",
        "post_half_ticks",
        "t_first_trade",
        "t_last_trade",
        "target",
        "total_traded",
    )

    def __init__(
        self,
        target: int,
        delta: float,
        imbalance: NDArray[np.int64],
        p0_half_ticks: NDArray[np.int64],
        post_half_ticks: NDArray[np.int64],
        t_first_trade: NDArray[np.int64],
        t_last_trade: NDArray[np.int64],
        total_traded: NDArray[np.int64],
        accepted: NDArray[np.bool_],
    ) -> None:
        self.target = target
        self.delta = delta
        self.imbalance = imbalance
        self.p0_half_ticks = p0_half_ticks
        self.post_half_ticks = post_half_ticks
        self.t_first_trade = t_first_trade
        self.t_last_trade = t_last_trade
        self.total_traded = total_traded
        self.accepted = accepted

    @classmethod
    def empty(cls, target: int, delta: float) -> EpisodeBatch:
        none = np.zeros(0, dtype=np.int64)
        return cls(target, delta, none, none, none, none, none, none, np.zeros(0, dtype=np.bool_))

    @property
    def accepted_count(self) -> int:
        return int(np.count_nonzero(self.accepted))

    def _episode(
        self, imbalance: int, p0: int, post: int, first: int, last: int, total: int, ok: bool
    ) -> ImbalanceEpisode:
        return ImbalanceEpisode(
            target=self.target,
            imbalance=imbalance,
            p0_half_ticks=p0,
            post_half_ticks=post,
            delta=self.delta,
            t_first_trade=first,
            t_last_trade=last,
            total_traded=total,
            accepted=ok,
        )

    def __len__(self) -> int:
        return int(self.imbalance.shape[0])

    @overload
    def __getitem__(self, index: int) -> ImbalanceEpisode: ...

    @overload
    def __getitem__(self, index: slice) -> list[ImbalanceEpisode]: ...

    def __getitem__(self, index: int | slice) -> ImbalanceEpisode | list[ImbalanceEpisode]:
        if isinstance(index, slice):
            return [self[i] for i in range(*index.indices(len(self)))]
        i = operator.index(index)
        if i < 0:
            i += len(self)
        if not 0 <= i < len(self):
            raise IndexError("episode index out of range")
        return self._episode(
            int(self.imbalance[i]),
            int(self.p0_half_ticks[i]),
            int(self.post_half_ticks[i]),
            int(self.t_first_trade[i]),
            int(self.t_last_trade[i]),
            int(self.total_traded[i]),
            bool(self.accepted[i]),
        )

    def __iter__(self) -> Iterator[ImbalanceEpisode]:
        rows = zip(
            self.imbalance.tolist(),
            self.p0_half_ticks.tolist(),
            self.post_half_ticks.tolist(),
            self.t_first_trade.tolist(),
            self.t_last_trade.tolist(),
            self.total_traded.tolist(),
            self.accepted.tolist(),
            strict=True,
        )
        for row in rows:
            yield self._episode(*row)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Sequence) or isinstance(other, str | bytes):
            return NotImplemented
        return len(self) == len(other) and all(a == b for a, b in zip(self, other, strict=True))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"EpisodeBatch(target={self.target}, episodes={len(self)})"
