"""
Book state entity - the best bid/offer as it evolves event by event.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import TYPE_CHECKING, Self

import numpy as np

from tick2impact.domain.value_objects.tick_grid import TickGrid

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from tick2impact.domain.entities.events import EventColumns, Level1Event


@dataclass(frozen=True, slots=True)
class BookState:
    """
    Best bid/ask prices and sizes plus trade bookkeeping.

    ``valid`` is True when the last quote was two-sided with a spread of at
    least one tick. Trades never touch the quote fields: quote changes arrive
    as separate events.
    """

    grid: TickGrid
    bid_price: float | None = None
    ask_price: float | None = None
    bid_size: int = 0
    ask_size: int = 0
    bid_ticks: int = 0
    ask_ticks: int = 0
    valid: bool = False
    last_quote_time: int | None = None
    last_trade_time: int | None = None
    last_trade_price: float | None = None
    last_trade_size: int | None = None

    @classmethod
    def empty(cls, grid: TickGrid) -> Self:
        """Book before the first quote of the session."""
        return cls(grid=grid)

    @property
    def tick_size(self) -> float:
        return self.grid.delta

    @property
    def mid_price(self) -> float:
        """Arithmetic mean of bid and ask."""
        if self.bid_price is None or self.ask_price is None:
            raise ValueError("mid price needs both sides of the book")
        return (self.bid_price + self.ask_price) / 2

    @property
    def mid_half_ticks(self) -> int:
        """Mid price as an integer number of half ticks."""
        return self.bid_ticks + self.ask_ticks

    @property
    def spread_ticks(self) -> int:
        return self.ask_ticks - self.bid_ticks

    @property
    def touch_volume(self) -> float:
        """Symmetric touch size (bid + ask) / 2."""
        return (self.bid_size + self.ask_size) / 2


def quote_is_valid(event: Level1Event, grid: TickGrid) -> bool:
    """Two-sided quote, positive sizes and at least one tick of spread."""
    if not event.is_two_sided:
        return False
    assert event.bid_price is not None and event.ask_price is not None
    return grid.to_ticks(event.ask_price) - grid.to_ticks(event.bid_price) >= 1


def apply_event(state: BookState, event: Level1Event) -> BookState:
    """
    Fold one event into the book.

    Quotes replace the bid/ask fields (and recompute the mid); trades only
    update last-trade bookkeeping.
    """
    if event.is_trade:
        return replace(
            state,
            last_trade_time=event.timestamp,
            last_trade_price=event.trade_price,
            last_trade_size=event.trade_size,
        )

    grid = state.grid
    bid_ticks = grid.to_ticks(event.bid_price) if event.bid_price is not None else 0
    ask_ticks = grid.to_ticks(event.ask_price) if event.ask_price is not None else 0
    return replace(
        state,
        bid_price=event.bid_price,
        ask_price=event.ask_price,
        bid_size=event.bid_size or 0,
        ask_size=event.ask_size or 0,
        bid_ticks=bid_ticks,
        ask_ticks=ask_ticks,
        valid=quote_is_valid(event, grid),
        last_quote_time=event.timestamp,
    )


def quote_columns(
    columns: EventColumns, grid: TickGrid
) -> tuple[NDArray[np.bool_], NDArray[np.int64], NDArray[np.int64]]:
    """
    ``quote_is_valid`` and the side ticks for every row of a chunk.

    Returns:
        Validity mask (False for trades), bid ticks and ask ticks; ticks are 0
        where a side is absent
    """
    quotes = ~columns.is_trade
    has_bid = quotes & ~np.isnan(columns.bid_price) & (columns.bid_size > 0)
    has_ask = quotes & ~np.isnan(columns.ask_price) & (columns.ask_size > 0)
    delta = grid.delta
    bid_ticks = np.rint(np.where(has_bid, columns.bid_price, 0.0) / delta).astype(np.int64)
    ask_ticks = np.rint(np.where(has_ask, columns.ask_price, 0.0) / delta).astype(np.int64)
    valid = has_bid & has_ask & (ask_ticks - bid_ticks >= 1)
    return valid, bid_ticks, ask_ticks
