"""
Discrete-event synthetic market.

A single best bid/offer, kept in integer ticks, is traded against by noise
traders on both sides and by an optional informed trader, and restored by a
market maker. Every fill is published as a trade followed by the quote it
leaves behind. All randomness comes from one seeded numpy Generator, so a
configuration reproduces its session exactly.
"""

from __future__ import annotations

import heapq
import itertools
from collections import Counter
from collections.abc import Callable
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal

import numpy as np

from tick2impact.domain.entities.events import Level1Event
from tick2impact.domain.entities.ground_truth import GroundTruthRecord
from tick2impact.domain.entities.session import SessionDescriptor
from tick2impact.domain.value_objects.trade_sign import Direction
from tick2impact.infrastructure.simulation.agents import (
    BaseAgent,
    InformedTrader,
    MarketMaker,
    NoiseTrader,
    QuoteRefresher,
    informed_trader,
    to_nanos,
)
from tick2impact.infrastructure.simulation.config import SimConfig
from tick2impact.shared.logging import get_logger

logger = get_logger("sim.market")

SizeDraw = Callable[[], int]


def _mid_preserving(mid2: int) -> tuple[int, int]:
    """Tightest bid/ask around a mid given in half ticks: one tick wide, or two."""
    if mid2 % 2:
        bid = (mid2 - 1) // 2
        return bid, bid + 1
    bid = mid2 // 2 - 1
    return bid, bid + 2


@dataclass(slots=True)
class SimulatedBook:
    """Touch of the synthetic book. Prices are tick indices."""

    bid_ticks: int
    ask_ticks: int
    bid_size: int
    ask_size: int
    bid_full: bool = True
    ask_full: bool = True

    @classmethod
    def around_mid(cls, mid2: int, draw: SizeDraw) -> SimulatedBook:
        bid, ask = _mid_preserving(mid2)
        return cls(bid, ask, draw(), draw())

    @property
    def mid2(self) -> int:
        return self.bid_ticks + self.ask_ticks

    def take(self, side: Direction, quantity: int, draw: SizeDraw) -> tuple[int, int, bool]:
        """
        Fill up to ``quantity`` at the touch of the side being hit.

        A level consumed in full is replaced by the next level one tick
        further away, with a freshly drawn size.

        Returns:
            (price in ticks, filled quantity, level depleted)
        """
        if side is Direction.BUY:
            price, fill = self.ask_ticks, min(quantity, self.ask_size)
            self.ask_size -= fill
            depleted = self.ask_size == 0
            if depleted:
                self.ask_ticks += 1
                self.ask_size = draw()
            self.ask_full = depleted
        else:
            price, fill = self.bid_ticks, min(quantity, self.bid_size)
            self.bid_size -= fill
            depleted = self.bid_size == 0
            if depleted:
                self.bid_ticks -= 1
                self.bid_size = draw()
            self.bid_full = depleted
        return price, fill, depleted

    def replenish(self, draw: SizeDraw) -> bool:
        """Close any gap around the mid and top up partly consumed levels."""
        bid, ask = _mid_preserving(self.mid2)
        changed = False
        if bid != self.bid_ticks or not self.bid_full:
            self.bid_ticks, self.bid_size, self.bid_full = bid, draw(), True
            changed = True
        if ask != self.ask_ticks or not self.ask_full:
            self.ask_ticks, self.ask_size, self.ask_full = ask, draw(), True
            changed = True
        return changed

    def refresh(self, draw: SizeDraw) -> None:
        self.bid_size, self.bid_full = draw(), True
        self.ask_size, self.ask_full = draw(), True


@dataclass
class SimulatedSession:
    """A generated session, its informed-episode labels and generator counters."""

    descriptor: SessionDescriptor
    events: list[Level1Event]
    truth: list[GroundTruthRecord] = field(default_factory=list)
    executed_volume: int = 0
    counters: Counter[str] = field(default_factory=Counter)

    @property
    def trade_count(self) -> int:
        return self.counters["trades"]

    @property
    def quote_count(self) -> int:
        return self.counters["quotes"]


class SimulatedMarket:
    """Event queue, book and participants of one synthetic session."""

    def __init__(self, config: SimConfig) -> None:
        self.config = config
        self.rng = np.random.default_rng(config.seed)
        self.descriptor = SessionDescriptor(
            instrument=config.instrument,
            tick_size=config.tick_size,
            session_start_ns=0,
            session_end_ns=to_nanos(config.session_seconds),
        )
        self.grid = self.descriptor.grid
        self.events: list[Level1Event] = []
        self.executed_volume = 0
        self.counters: Counter[str] = Counter()
        self._queue: list[tuple[int, int, Callable[[int], None]]] = []
        self._sequence = itertools.count()

        mid2 = int(
            (Decimal(repr(config.initial_mid)) * 2 / config.tick_size).to_integral_value(
                ROUND_HALF_EVEN
            )
        )
        self.book = SimulatedBook.around_mid(mid2, self.draw_size)

        self.maker = MarketMaker(self, to_nanos(config.replenish_delay))
        self.agents: list[BaseAgent] = [
            self.maker,
            NoiseTrader(self, Direction.BUY, config.noise_rate, config.noise_size_mean),
            NoiseTrader(self, Direction.SELL, config.noise_rate, config.noise_size_mean),
        ]
        if config.quote_rate > 0:
            self.agents.append(QuoteRefresher(self, config.quote_rate))
        self.informed: InformedTrader | None = None
        if config.informed is not None:
            self.informed = informed_trader(self, config.informed)
            self.agents.append(self.informed)

    def draw_size(self) -> int:
        """Touch size for a new or replenished level."""
        jitter = self.config.touch_jitter
        if jitter == 0:
            return self.config.touch_size
        return self.config.touch_size + int(self.rng.integers(-jitter, jitter + 1))

    def schedule(self, t: int, action: Callable[[int], None]) -> None:
        heapq.heappush(self._queue, (t, next(self._sequence), action))

    def emit_quote(self, t: int) -> None:
        book, price = self.book, self.grid.price
        self.events.append(
            Level1Event.quote(
                t, price(book.bid_ticks), price(book.ask_ticks), book.bid_size, book.ask_size
            )
        )
        self.counters["quotes"] += 1

    def execute(self, t: int, side: Direction, size: int, agent: BaseAgent) -> None:
        """
        Run a market order through the book.

        Each fill is published as a trade, followed by the quote left once
        the market maker has reacted.
        """
        remaining = size
        while remaining > 0:
            price, fill, depleted = self.book.take(side, remaining, self.draw_size)
            remaining -= fill
            self.events.append(Level1Event.trade(t, self.grid.price(price), fill))
            self.executed_volume += fill
            self.counters["trades"] += 1
            if depleted:
                self.counters["depletions"] += 1
            self.maker.after_fill(t)
            self.emit_quote(t)
        self.counters[f"{agent.kind}_{side.label}_volume"] += size
        for listener in self.agents:
            listener.on_trade(t, size, agent)

    def run(self) -> SimulatedSession:
        end = self.descriptor.session_end_ns
        self.emit_quote(0)
        for agent in self.agents:
            agent.start()
        while self._queue:
            t, _, action = heapq.heappop(self._queue)
            if t > end:
                break
            action(t)

        truth = list(self.informed.truth) if self.informed else []
        if self.informed is not None and self.informed.active:
            self.counters["incomplete_informed_episodes"] += 1
        logger.info(
            f"Simulated {self.descriptor.instrument}: {self.counters['trades']} trades, "
            f"{self.counters['quotes']} quotes, {len(truth)} informed episodes"
        )
        return SimulatedSession(
            descriptor=self.descriptor,
            events=self.events,
            truth=truth,
            executed_volume=self.executed_volume,
            counters=self.counters,
        )


def generate_session(config: SimConfig) -> SimulatedSession:
    """Generate one synthetic session from a validated configuration."""
    return SimulatedMarket(config).run()
