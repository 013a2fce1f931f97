"""
Time-weighted symmetric touch volume.

Each valid quote holds its touch ``(bid_size + ask_size) / 2`` until the next
quote update; the last quote holds until the session end. Intervals opened by
invalid quotes carry no weight, and only quotes inside the session bounds
count.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from tick2impact.domain.entities.book import quote_columns
from tick2impact.shared.exceptions import EmptySessionError
from tick2impact.shared.logging import get_logger

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from tick2impact.domain.protocols.source import IEventSource

logger = get_logger("touch")


class TouchAccumulator:
    """
    Duration-weighted mean of the touch size, fed batches of quote updates.

    Sizes are accumulated as integer ``bid_size + ask_size`` sums so a constant
    book yields its touch exactly.
    """

    def __init__(self, session_end_ns: int) -> None:
        self.session_end_ns = session_end_ns
        self._weighted = 0
        self._weight = 0
        self._plain = 0
        self._count = 0
        self._current: int | None = None
        self._since = 0
        self._min: int | None = None
        self._max: int | None = None

    def on_quotes(
        self,
        timestamps: NDArray[np.int64],
        size_sums: NDArray[np.int64],
        valid: NDArray[np.bool_],
    ) -> None:
        """
        Record consecutive quote updates.

        Args:
            timestamps: Quote times in nanoseconds, non-decreasing
            size_sums: ``bid_size + ask_size`` per quote
            valid: Whether each quote is valid; invalid quotes end the
                interval before them and open one of zero weight
        """
        if timestamps.size == 0:
            return
        if self._current is not None:
            span = int(timestamps[0]) - self._since
            self._weighted += self._current * span
            self._weight += span
        spans = np.where(valid[:-1], np.diff(timestamps), 0)
        self._weighted += int(np.dot(spans, size_sums[:-1]))
        self._weight += int(spans.sum())

        held = size_sums[valid]
        if held.size:
            self._plain += int(held.sum())
            self._count += int(held.size)
            low, high = int(held.min()), int(held.max())
            self._min = low if self._min is None else min(self._min, low)
            self._max = high if self._max is None else max(self._max, high)
        self._current = int(size_sums[-1]) if valid[-1] else None
        self._since = int(timestamps[-1])

    @property
    def quote_count(self) -> int:
        """Number of valid quotes seen."""
        return self._count

    @property
    def bounds(self) -> tuple[float, float]:
        """Smallest and largest touch of any valid quote."""
        if self._min is None or self._max is None:
            raise EmptySessionError()
        return self._min / 2, self._max / 2

    def value(self) -> float:
        """
        Touch volume including the final interval up to the session end.

        Falls back to the plain mean of valid quotes when every interval has
        zero duration.

        Raises:
            EmptySessionError: no valid quote was recorded
        """
        if self._count == 0:
            raise EmptySessionError()
        weighted, weight = self._weighted, self._weight
        if self._current is not None:
            span = max(0, self.session_end_ns - self._since)
            weighted += self._current * span
            weight += span
        if weight > 0:
            return weighted / (2 * weight)
        return self._plain / (2 * self._count)


def time_weighted_touch(source: IEventSource) -> float:
    """
    Average touch size of a session, weighted by how long each quote stood.

    Quotes before the first valid one, and any outside the session bounds,
    are ignored.

    Raises:
        EmptySessionError: the session has no valid two-sided quote
    """
    descriptor = source.descriptor
    grid = descriptor.grid
    accumulator = TouchAccumulator(descriptor.session_end_ns)
    for chunk in source.column_chunks():
        columns, _, _ = chunk.within(descriptor.session_start_ns, descriptor.session_end_ns)
        valid, _, _ = quote_columns(columns, grid)
        quotes = ~columns.is_trade
        if not accumulator.quote_count:
            if not valid.any():
                continue
            quotes[: int(np.argmax(valid))] = False
        accumulator.on_quotes(
            columns.timestamp[quotes],
            (columns.bid_size + columns.ask_size)[quotes],
            valid[quotes],
        )
    touch = accumulator.value()
    logger.debug(f"{descriptor.instrument}: touch volume {touch:.3f}")
    return touch
