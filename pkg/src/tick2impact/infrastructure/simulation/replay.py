"""
Replay diagnostics for tick streams.

Walks a stream once and reports, by event index, every line that breaks the
tick format, goes back in time, leaves the session, quotes off the price grid
or publishes a locked or crossed book. Also measures the realized trade
rates per aggressor side.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import IO, TYPE_CHECKING

from tick2impact.infrastructure.analytics.classifier import sign_of
from tick2impact.infrastructure.parsing.tick_format import decode_line, is_header_line, parse_line
from tick2impact.shared.exceptions import TickDataError
from tick2impact.shared.logging import get_logger

if TYPE_CHECKING:
    from tick2impact.domain.entities.events import Level1Event
    from tick2impact.domain.entities.session import SessionDescriptor

logger = get_logger("replay")


@dataclass(frozen=True, slots=True)
class Violation:
    """One problem found at a 0-based event index."""

    index: int
    kind: str
    message: str

    def __str__(self) -> str:
        return f"#{self.index} {self.kind}: {self.message}"


@dataclass
class ReplayDiagnostics:
    """Outcome of a replay: violations, counts and realized rates."""

    duration_s: float
    events: int = 0
    violations: list[Violation] = field(default_factory=list)
    counters: Counter[str] = field(default_factory=Counter)

    @property
    def ok(self) -> bool:
        return not self.violations

    def rate(self, name: str) -> float:
        """Per-second rate of a counter over the session."""
        return self.counters[name] / self.duration_s if self.duration_s > 0 else 0.0

    @property
    def buy_trade_rate(self) -> float:
        return self.rate("buy_trades")

    @property
    def sell_trade_rate(self) -> float:
        return self.rate("sell_trades")

    def summary(self) -> dict[str, object]:
        return {
            "events": self.events,
            "violations": len(self.violations),
            "buy_trade_rate": round(self.buy_trade_rate, 6),
            "sell_trade_rate": round(self.sell_trade_rate, 6),
            **dict(sorted(self.counters.items())),
        }


class _Replay:
    def __init__(self, descriptor: SessionDescriptor) -> None:
        self.descriptor = descriptor
        self.grid = descriptor.grid
        self.result = ReplayDiagnostics(duration_s=descriptor.duration_s)
        self.previous: int | None = None
        self.valid = False
        self.bid = self.ask = 0.0

    def flag(self, index: int, kind: str, message: str) -> None:
        self.result.violations.append(Violation(index, kind, message))

    def check(self, index: int, event: Level1Event) -> None:
        counters = self.result.counters
        self.result.events += 1
        ts = event.timestamp
        if self.previous is not None and ts < self.previous:
            self.flag(index, "timestamp", f"{ts} before {self.previous}")
        self.previous = ts if self.previous is None else max(ts, self.previous)
        if not self.descriptor.session_start_ns <= ts <= self.descriptor.session_end_ns:
            self.flag(index, "session", f"{ts} outside session bounds")

        if event.is_trade:
            assert event.trade_price is not None and event.trade_size is not None
            counters["trades"] += 1
            counters["traded_volume"] += event.trade_size
            if not self.grid.is_on_grid(event.trade_price):
                self.flag(index, "grid", f"trade price {event.trade_price} off the tick grid")
            if not self.valid:
                counters["trades_without_quote"] += 1
                return
            match sign_of(event.trade_price, self.bid, self.ask, self.grid.tolerance):
                case 1:
                    counters["buy_trades"] += 1
                    counters["buy_volume"] += event.trade_size
                case -1:
                    counters["sell_trades"] += 1
                    counters["sell_volume"] += event.trade_size
                case _:
                    counters["inside_trades"] += 1
            return

        counters["quotes"] += 1
        off_grid = [
            p for p in (event.bid_price, event.ask_price) if p is not None and not self.grid.is_on_grid(p)
        ]
        if off_grid:
            self.flag(index, "grid", f"quote price {off_grid[0]} off the tick grid")
        if not event.is_two_sided:
            counters["one_sided_quotes"] += 1
            self.valid = False
            return
        assert event.bid_price is not None and event.ask_price is not None
        spread = self.grid.to_ticks(event.ask_price) - self.grid.to_ticks(event.bid_price)
        if spread < 1:
            self.flag(index, "spread", f"bid {event.bid_price} / ask {event.ask_price}")
            self.valid = False
            return
        self.valid = True
        self.bid, self.ask = event.bid_price, event.ask_price


def replay_events(
    events: Iterable[Level1Event], descriptor: SessionDescriptor
) -> ReplayDiagnostics:
    """Check already decoded events."""
    replay = _Replay(descriptor)
    for index, event in enumerate(events):
        replay.check(index, event)
    return _finish(replay)


def replay_check(
    source: IO[bytes] | IO[str] | Iterable[bytes | str], descriptor: SessionDescriptor
) -> ReplayDiagnostics:
    """
    Check a raw tick stream line by line.

    Unlike the parser, a bad line does not stop the replay: it is reported at
    its event index and skipped.
    """
    replay = _Replay(descriptor)
    index = 0
    first = True
    for line_number, raw in enumerate(source, start=1):
        try:
            line = decode_line(raw, line_number).rstrip()
            if not line:
                continue
            if first:
                first = False
                if is_header_line(line):
                    continue
            event = parse_line(line, line_number)
        except TickDataError as e:
            first = False
            replay.result.events += 1
            replay.flag(index, "format", str(e))
        else:
            replay.check(index, event)
        index += 1
    return _finish(replay)


def _finish(replay: _Replay) -> ReplayDiagnostics:
    result = replay.result
    if result.violations:
        logger.warning(f"{replay.descriptor.instrument}: {len(result.violations)} violations")
    else:
        logger.debug(f"{replay.descriptor.instrument}: {result.events} events, no violations")
    return result
