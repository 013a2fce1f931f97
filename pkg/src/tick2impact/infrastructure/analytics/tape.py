"""
The trade tape: one pass over a session, column chunk by column chunk.

Every trade after the opening quote is kept with its sign, the mid just
before it and the mid of the first valid quote after it. Book state, the
touch accumulator and trades still waiting for a post quote carry over from
one chunk to the next, so the tape does not depend on how the stream is cut.

Only events inside ``[session_start_ns, session_end_ns]`` take part; the
rest are counted and skipped.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from tick2impact.domain.entities.book import quote_columns
from tick2impact.infrastructure.analytics.touch import TouchAccumulator
from tick2impact.shared.logging import get_logger

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from tick2impact.domain.entities.events import EventColumns
    from tick2impact.domain.entities.session import SessionDescriptor
    from tick2impact.domain.protocols.source import IEventSource

logger = get_logger("tape")


def _no_ints() -> NDArray[np.int64]:
    return np.zeros(0, dtype=np.int64)


@dataclass(slots=True)
class SessionTape:
    """
    Trades of one session plus what the single pass learned on the way.

    Mids are integer half ticks. ``post_half`` is meaningful where
    ``has_post`` is set. ``touch`` is None when the session never had a
    valid quote.
    """

    descriptor: SessionDescriptor
    timestamps: NDArray[np.int64] = field(default_factory=_no_ints)
    sizes: NDArray[np.int64] = field(default_factory=_no_ints)
    signs: NDArray[np.int64] = field(default_factory=_no_ints)
    mid_half: NDArray[np.int64] = field(default_factory=_no_ints)
    post_half: NDArray[np.int64] = field(default_factory=_no_ints)
    has_post: NDArray[np.bool_] = field(default_factory=lambda: np.zeros(0, dtype=np.bool_))
    touch: float | None = None
    touch_bounds: tuple[float, float] | None = None
    last_mid_half: int | None = None
    counters: Counter[str] = field(default_factory=Counter)

    def __len__(self) -> int:
        return int(self.signs.shape[0])


@dataclass(slots=True)
class _Piece:
    timestamps: NDArray[np.int64]
    sizes: NDArray[np.int64]
    signs: NDArray[np.int64]
    mid_half: NDArray[np.int64]
    post_half: NDArray[np.int64]
    has_post: NDArray[np.bool_]


class TapeBuilder:
    """Builds a ``SessionTape`` from column chunks fed in stream order."""

    def __init__(self, descriptor: SessionDescriptor) -> None:
        self.descriptor = descriptor
        self.grid = descriptor.grid
        self.counters: Counter[str] = Counter()
        self.touch = TouchAccumulator(descriptor.session_end_ns)
        self.opened = False
        self.book_valid = False
        self.bid = self.ask = 0.0
        self.mid_half = 0
        self._pieces: list[_Piece] = []
        self._waiting: list[tuple[_Piece, int]] = []

    def _count(self, name: str, n: int) -> None:
        if n:
            self.counters[name] += n

    def feed(self, chunk: EventColumns) -> None:
        """Fold the next chunk of the stream into the tape."""
        d = self.descriptor
        columns, before, after = chunk.within(d.session_start_ns, d.session_end_ns)
        self._count("events_before_session", before)
        self._count("events_after_session", after)
        n = len(columns)
        if n == 0:
            return
        is_trade = columns.is_trade
        trade_count = int(np.count_nonzero(is_trade))
        self._count("trades", trade_count)
        self._count("quotes", n - trade_count)

        valid, bid_ticks, ask_ticks = quote_columns(columns, self.grid)
        mid = bid_ticks + ask_ticks
        any_valid = bool(valid.any())
        open_at = 0
        if not self.opened:
            if not any_valid:
                self._count("pre_open_events", n)
                return
            open_at = int(np.argmax(valid))
            self._count("pre_open_events", open_at)

        quotes = ~is_trade
        quotes[:open_at] = False
        self._count("invalid_quotes", int(np.count_nonzero(quotes & ~valid)))
        self.touch.on_quotes(
            columns.timestamp[quotes], (columns.bid_size + columns.ask_size)[quotes], valid[quotes]
        )

        index = np.arange(n)
        last_quote = np.maximum.accumulate(np.where(quotes, index, -1))
        last_valid = np.maximum.accumulate(np.where(valid, index, -1))

        if any_valid:
            first_mid = int(mid[int(np.argmax(valid))])
            for piece, start in self._waiting:
                piece.post_half[start:] = first_mid
                piece.has_post[start:] = True
            self._waiting.clear()

        trades = np.flatnonzero(is_trade & (index >= open_at))
        if trades.size:
            next_valid = np.minimum.accumulate(np.where(valid, index, n)[::-1])[::-1]
            self._add_trades(columns, trades, valid, mid, last_quote, last_valid, next_valid)

        if quotes.any():
            self.book_valid = bool(valid[last_quote[-1]])
        if any_valid:
            at = int(last_valid[-1])
            self.bid = float(columns.bid_price[at])
            self.ask = float(columns.ask_price[at])
            self.mid_half = int(mid[at])
            self.opened = True

    def _add_trades(
        self,
        columns: EventColumns,
        trades: NDArray[np.intp],
        valid: NDArray[np.bool_],
        mid: NDArray[np.int64],
        last_quote: NDArray[np.intp],
        last_valid: NDArray[np.intp],
        next_valid: NDArray[np.intp],
    ) -> None:
        quote_at = last_quote[trades]
        book_valid = np.where(quote_at >= 0, valid[np.maximum(quote_at, 0)], self.book_valid)
        valid_at = last_valid[trades]
        seen = valid_at >= 0
        at = np.maximum(valid_at, 0)
        mid_before = np.where(seen, mid[at], self.mid_half).astype(np.int64)
        bid = np.where(seen, columns.bid_price[at], self.bid)
        ask = np.where(seen, columns.ask_price[at], self.ask)

        price = columns.trade_price[trades]
        tolerance = self.grid.tolerance
        signs = np.where(price >= ask - tolerance, 1, np.where(price <= bid + tolerance, -1, 0))
        signs = np.where(book_valid, signs, 0).astype(np.int64)
        self._count("inside_spread_trades", int(np.count_nonzero(book_valid & (signs == 0))))
        self._count("unclassified_trades", int(np.count_nonzero(~book_valid)))

        n = len(columns)
        post_at = next_valid[trades]
        has_post = post_at < n
        post_half = np.where(has_post, mid[np.minimum(post_at, n - 1)], 0).astype(np.int64)

        piece = _Piece(
            timestamps=columns.timestamp[trades],
            sizes=columns.trade_size[trades],
            signs=signs,
            mid_half=mid_before,
            post_half=post_half,
            has_post=has_post,
        )
        self._pieces.append(piece)
        # trades after the chunk's last valid quote wait for a later chunk
        waiting_from = int(np.count_nonzero(has_post))
        if waiting_from < trades.size:
            self._waiting.append((piece, waiting_from))

    def finish(self) -> SessionTape:
        """The tape of everything fed so far."""
        pieces = self._pieces
        tape = SessionTape(self.descriptor, counters=self.counters)
        if pieces:
            tape.timestamps = np.concatenate([p.timestamps for p in pieces])
            tape.sizes = np.concatenate([p.sizes for p in pieces])
            tape.signs = np.concatenate([p.signs for p in pieces])
            tape.mid_half = np.concatenate([p.mid_half for p in pieces])
            tape.post_half = np.concatenate([p.post_half for p in pieces])
            tape.has_post = np.concatenate([p.has_post for p in pieces])
        if self.opened:
            tape.touch = self.touch.value()
            tape.touch_bounds = self.touch.bounds
            tape.last_mid_half = self.mid_half
        return tape


def scan_session(source: IEventSource) -> SessionTape:
    """
    Read a session once, building the trade tape and the touch volume.

    Events before the first valid quote are skipped; trades while the book is
    invalid are kept with sign 0.
    """
    builder = TapeBuilder(source.descriptor)
    for chunk in source.column_chunks():
        builder.feed(chunk)
    tape = builder.finish()
    counters = tape.counters
    outside = counters["events_before_session"] + counters["events_after_session"]
    if outside:
        instrument = tape.descriptor.instrument
        logger.warning(f"{instrument}: {outside} events outside the session skipped")
    logger.debug(
        f"{tape.descriptor.instrument}: {len(tape)} trades on tape, "
        f"{counters['quotes']} quotes, touch {tape.touch}"
    )
    return tape
