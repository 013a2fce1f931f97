"""
Level-1 event entities.

A Level-1 stream interleaves trades and best bid/offer updates. Streams are
handled one event at a time (``Level1Event``) or column-wise in chunks
(``EventColumns``) on the throughput path.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from typing import TYPE_CHECKING, Self

import numpy as np

from tick2impact.shared.constants import QUOTE_KIND, TRADE_KIND

if TYPE_CHECKING:
    from numpy.typing import NDArray


class EventKind(StrEnum):
    """Event kind as written in the tick file."""

    TRADE = TRADE_KIND
    QUOTE = QUOTE_KIND


@dataclass(frozen=True, slots=True)
class Level1Event:
    """
    One tick: a trade (price, size) or a quote update (best bid/ask price and size).

    Fields not used by the event kind are None. A quote side is absent when its
    price is None. Events decoded from a tick file remember each price's text
    so they can be written back unchanged; the text never takes part in
    comparisons.
    """

    timestamp: int
    kind: EventKind
    trade_price: float | None = None
    trade_size: int | None = None
    bid_price: float | None = None
    ask_price: float | None = None
    bid_size: int | None = None
    ask_size: int | None = None
    trade_price_text: str | None = field(default=None, compare=False, repr=False)
    bid_price_text: str | None = field(default=None, compare=False, repr=False)
    ask_price_text: str | None = field(default=None, compare=False, repr=False)

    @classmethod
    def trade(cls, timestamp: int, price: float, size: int) -> Self:
        return cls(timestamp, EventKind.TRADE, trade_price=price, trade_size=size)

    @classmethod
    def quote(
        cls,
        timestamp: int,
        bid_price: float | None,
        ask_price: float | None,
        bid_size: int | None,
        ask_size: int | None,
    ) -> Self:
        return cls(
            timestamp,
            EventKind.QUOTE,
            bid_price=bid_price,
            ask_price=ask_price,
            bid_size=bid_size,
            ask_size=ask_size,
        )

    @property
    def is_trade(self) -> bool:
        return self.kind is EventKind.TRADE

    @property
    def is_quote(self) -> bool:
        return self.kind is EventKind.QUOTE

    @property
    def has_bid(self) -> bool:
        return self.bid_price is not None and bool(self.bid_size)

    @property
    def has_ask(self) -> bool:
        return self.ask_price is not None and bool(self.ask_size)

    @property
    def is_two_sided(self) -> bool:
        return self.is_quote and self.has_bid and self.has_ask

    def __str__(self) -> str:
        if self.is_trade:
            return f"T@{self.timestamp} {self.trade_size}x{self.trade_price}"
        return (
            f"Q@{self.timestamp} {self.bid_size}x{self.bid_price} / "
            f"{self.ask_size}x{self.ask_price}"
        )


_NAN = float("nan")


@dataclass(frozen=True, slots=True)
class EventColumns:
    """
    A run of consecutive events as parallel arrays.

    Absent prices are NaN and absent sizes 0, exactly as an empty field in
    the tick file.
    """

    timestamp: NDArray[np.int64]
    is_trade: NDArray[np.bool_]
    trade_price: NDArray[np.float64]
    trade_size: NDArray[np.int64]
    bid_price: NDArray[np.float64]
    ask_price: NDArray[np.float64]
    bid_size: NDArray[np.int64]
    ask_size: NDArray[np.int64]

    def __len__(self) -> int:
        return int(self.timestamp.shape[0])

    @classmethod
    def empty(cls) -> Self:
        return cls.from_events(())

    @classmethod
    def from_events(cls, events: Iterable[Level1Event]) -> Self:
        items = events if isinstance(events, Sequence) else list(events)
        return cls(
            timestamp=np.array([e.timestamp for e in items], dtype=np.int64),
            is_trade=np.array([e.is_trade for e in items], dtype=np.bool_),
            trade_price=np.array(
                [_NAN if e.trade_price is None else e.trade_price for e in items],
                dtype=np.float64,
            ),
            trade_size=np.array([e.trade_size or 0 for e in items], dtype=np.int64),
            bid_price=np.array(
                [_NAN if e.bid_price is None else e.bid_price for e in items], dtype=np.float64
            ),
            ask_price=np.array(
                [_NAN if e.ask_price is None else e.ask_price for e in items], dtype=np.float64
            ),
            bid_size=np.array([e.bid_size or 0 for e in items], dtype=np.int64),
            ask_size=np.array([e.ask_size or 0 for e in items], dtype=np.int64),
        )

    @classmethod
    def concat(cls, parts: Sequence[EventColumns]) -> Self:
        """Join chunks end to end."""
        if not parts:
            return cls.empty()
        return cls(
            timestamp=np.concatenate([p.timestamp for p in parts]),
            is_trade=np.concatenate([p.is_trade for p in parts]),
            trade_price=np.concatenate([p.trade_price for p in parts]),
            trade_size=np.concatenate([p.trade_size for p in parts]),
            bid_price=np.concatenate([p.bid_price for p in parts]),
            ask_price=np.concatenate([p.ask_price for p in parts]),
            bid_size=np.concatenate([p.bid_size for p in parts]),
            ask_size=np.concatenate([p.ask_size for p in parts]),
        )

    def take(self, index: NDArray[np.bool_] | NDArray[np.intp] | slice) -> EventColumns:
        """Rows selected by a mask, an index array or a slice."""
        return EventColumns(
            timestamp=self.timestamp[index],
            is_trade=self.is_trade[index],
            trade_price=self.trade_price[index],
            trade_size=self.trade_size[index],
            bid_price=self.bid_price[index],
            ask_price=self.ask_price[index],
            bid_size=self.bid_size[index],
            ask_size=self.ask_size[index],
        )

    def within(self, start_ns: int, end_ns: int) -> tuple[EventColumns, int, int]:
        """
        Rows timestamped inside ``[start_ns, end_ns]``.

        Returns:
            The kept rows, the number of rows before the window and the
            number after it
        """
        before = int(np.count_nonzero(self.timestamp < start_ns))
        after = int(np.count_nonzero(self.timestamp > end_ns))
        if before == 0 and after == 0:
            return self, 0, 0
        inside = (self.timestamp >= start_ns) & (self.timestamp <= end_ns)
        return self.take(inside), before, after

    def chunks(self, size: int) -> Iterator[EventColumns]:
        """Consecutive slices of at most ``size`` rows."""
        for start in range(0, len(self), size):
            yield self.take(slice(start, start + size))
