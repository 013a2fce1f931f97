"""
Market participants of the synthetic session.

Every agent follows the same wake-up cycle (template method): the market
calls ``wake`` at a scheduled time, the agent acts, then tells the market
when to wake it next. Agents also hear about every execution through
``on_trade``.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from typing import TYPE_CHECKING

from tick2impact.domain.entities.ground_truth import GroundTruthRecord
from tick2impact.domain.value_objects.trade_sign import Direction
from tick2impact.infrastructure.simulation.config import InformedStyle, InformedTraderConfig
from tick2impact.shared.constants import NANOS_PER_SECOND
from tick2impact.shared.logging import get_logger

if TYPE_CHECKING:
    from tick2impact.infrastructure.simulation.market import SimulatedMarket

logger = get_logger("sim.agents")


def to_nanos(seconds: float) -> int:
    return round(seconds * NANOS_PER_SECOND)


class BaseAgent(ABC):
    """
    Base class for market participants.

    Subclasses implement ``act`` and, when they wake up on their own,
    ``next_wake``.
    """

    kind: str = "agent"

    def __init__(self, market: SimulatedMarket) -> None:
        self.market = market

    def start(self) -> None:
        """Schedule the first wake-up, if the agent has one."""
        first = self.first_wake()
        if first is not None:
            self.market.schedule(first, self.wake)

    def wake(self, t: int) -> None:
        """Act at time ``t`` and schedule the next wake-up."""
        self.act(t)
        following = self.next_wake(t)
        if following is not None:
            self.market.schedule(following, self.wake)

    def first_wake(self) -> int | None:
        return self.next_wake(0)

    @abstractmethod
    def act(self, t: int) -> None:
        """Do whatever the agent does when woken."""
        ...

    def next_wake(self, t: int) -> int | None:
        return None

    def on_trade(self, t: int, size: int, agent: BaseAgent) -> None:
        """Hook called after every market order executes. Default does nothing."""
        return None


class PoissonAgent(BaseAgent):
    """Agent woken by a Poisson clock."""

    def __init__(self, market: SimulatedMarket, rate: float) -> None:
        super().__init__(market)
        self.rate = rate

    def next_wake(self, t: int) -> int | None:
        if self.rate <= 0:
            return None
        return t + to_nanos(float(self.market.rng.exponential(1.0 / self.rate)))


class NoiseTrader(PoissonAgent):
    """Uninformed market orders on one side, geometric sizes."""

    kind = "noise"

    def __init__(
        self, market: SimulatedMarket, side: Direction, rate: float, size_mean: float
    ) -> None:
        super().__init__(market, rate)
        self.side = side
        self.size_mean = size_mean

    def act(self, t: int) -> None:
        size = int(self.market.rng.geometric(1.0 / self.size_mean))
        self.market.execute(t, self.side, size, self)


class QuoteRefresher(PoissonAgent):
    """Market maker re-sizing both touch levels without trading."""

    kind = "refresh"

    def act(self, t: int) -> None:
        self.market.book.refresh(self.market.draw_size)
        self.market.counters["quote_refreshes"] += 1
        self.market.emit_quote(t)


class MarketMaker(BaseAgent):
    """
    Restores the touch after market orders.

    Partly consumed levels are topped back up to a fresh target size; a gap
    left by a depleted level is closed around the current mid so the mid
    does not move. With zero delay this happens before the post-trade quote
    is published.
    """

    kind = "maker"

    def __init__(self, market: SimulatedMarket, delay_ns: int) -> None:
        super().__init__(market)
        self.delay_ns = delay_ns
        self._pending = False

    def after_fill(self, t: int) -> None:
        if self.delay_ns == 0:
            self._restore()
        elif not self._pending:
            self._pending = True
            self.market.schedule(t + self.delay_ns, self.wake)

    def act(self, t: int) -> None:
        self._pending = False
        if self._restore():
            self.market.emit_quote(t)

    def _restore(self) -> bool:
        changed = self.market.book.replenish(self.market.draw_size)
        if changed:
            self.market.counters["replenishments"] += 1
        return changed


class InformedTrader(BaseAgent):
    """
    Trades a one-sided target volume per episode, episodes back to back.

    Subclasses decide how an episode's volume reaches the market; the base
    class keeps the schedule and the ground-truth record.
    """

    kind = "informed"

    def __init__(self, market: SimulatedMarket, config: InformedTraderConfig) -> None:
        super().__init__(market)
        self.config = config
        self.truth: list[GroundTruthRecord] = []
        self.active = False
        self.direction = Direction.BUY
        self.target = 0
        self.informed_volume = 0
        self.window_volume = 0
        self.t_start = 0

    def first_wake(self) -> int | None:
        return to_nanos(self.config.start)

    def act(self, t: int) -> None:
        rng = self.market.rng
        targets = self.config.targets
        self.target = targets[int(rng.integers(len(targets)))] if len(targets) > 1 else targets[0]
        match self.config.direction:
            case "buy":
                self.direction = Direction.BUY
            case "sell":
                self.direction = Direction.SELL
            case _:
                self.direction = Direction.BUY if rng.integers(2) else Direction.SELL
        self.active = True
        self.informed_volume = 0
        self.window_volume = 0
        self.t_start = t
        self.begin(t)

    @abstractmethod
    def begin(self, t: int) -> None:
        """Start executing the current episode."""
        ...

    def on_trade(self, t: int, size: int, agent: BaseAgent) -> None:
        if not self.active:
            return
        self.window_volume += size
        if agent is self:
            self.informed_volume += size
        else:
            self.follow(t)

    def follow(self, t: int) -> None:
        """React to someone else's trade during an episode. Default does nothing."""
        return None

    @property
    def remaining(self) -> int:
        return self.target - self.informed_volume

    def finish(self, t: int) -> None:
        record = GroundTruthRecord(
            episode_id=len(self.truth),
            t_start_ns=self.t_start,
            t_end_ns=t,
            target=self.target,
            style=self.config.style.value,
            direction=self.direction,
            informed_volume=self.informed_volume,
            total_volume=self.window_volume,
        )
        self.truth.append(record)
        self.active = False
        self.market.schedule(t + to_nanos(self.config.spacing), self.wake)


class AggressiveTrader(InformedTrader):
    """Sends the whole target as one market order."""

    def begin(self, t: int) -> None:
        self.market.execute(t, self.direction, self.target, self)
        self.finish(t)


class PovTrader(InformedTrader):
    """
    Percent-of-volume execution.

    After each trade by someone else the trader crosses the spread for just
    enough contracts to hold its share of the episode's volume at
    ``pov_rate``; the last child order is capped at the target.
    """

    def begin(self, t: int) -> None:
        return None

    def follow(self, t: int) -> None:
        rate = self.config.pov_rate
        if rate >= 1:
            needed = self.remaining
        else:
            others = self.window_volume - self.informed_volume
            behind = (rate * (self.informed_volume + others) - self.informed_volume) / (1 - rate)
            needed = math.ceil(behind - 1e-9)
        child = min(needed, self.remaining)
        if child > 0:
            self.market.execute(t, self.direction, child, self)
        if self.remaining <= 0:
            self.finish(t)


def informed_trader(market: SimulatedMarket, config: InformedTraderConfig) -> InformedTrader:
    """Informed trader for the configured style."""
    if config.style is InformedStyle.POV:
        return PovTrader(market, config)
    return AggressiveTrader(market, config)
