"""
Naive imbalance extractor used as a test oracle.

Rebuilds the book before every event with ``apply_event``, classifies with
``classify_trade``, and re-scans the event list for window volumes and post
quotes instead of tracking them incrementally.
"""

from __future__ import annotations

from dataclasses import dataclass

from tick2impact.domain.entities.book import BookState, apply_event, quote_is_valid
from tick2impact.domain.entities.episode import ImbalanceEpisode
from tick2impact.domain.entities.events import Level1Event
from tick2impact.domain.entities.session import SessionDescriptor
from tick2impact.infrastructure.analytics.classifier import classify_trade


@dataclass(frozen=True)
class ReferenceEpisode:
    t_first: int
    t_last: int
    imbalance: int
    p0_half: int
    post_half: int
    total: int
    accepted: bool

    @classmethod
    def of(cls, episode: ImbalanceEpisode) -> ReferenceEpisode:
        return cls(
            episode.t_first_trade,
            episode.t_last_trade,
            episode.imbalance,
            episode.p0_half_ticks,
            episode.post_half_ticks,
            episode.total_traded,
            episode.accepted,
        )


def reference_episodes(
    events: list[Level1Event],
    descriptor: SessionDescriptor,
    target: int,
    overshoot_tol: float,
    require_post_quote: bool = True,
) -> list[ReferenceEpisode]:
    grid = descriptor.grid

    books: list[BookState] = []
    book = BookState.empty(grid)
    for event in events:
        books.append(book)
        book = apply_event(book, event)

    def mid_of(event: Level1Event) -> int:
        assert event.bid_price is not None and event.ask_price is not None
        return grid.to_ticks(event.bid_price) + grid.to_ticks(event.ask_price)

    def next_valid_mid(after: int) -> int | None:
        for event in events[after + 1 :]:
            if event.is_quote and quote_is_valid(event, grid):
                return mid_of(event)
        return None

    def last_valid_mid() -> int | None:
        for event in reversed(events):
            if event.is_quote and quote_is_valid(event, grid):
                return mid_of(event)
        return None

    found: list[ReferenceEpisode] = []
    imbalance = 0
    start = 0
    for i, event in enumerate(events):
        if not event.is_trade:
            continue
        assert event.trade_price is not None and event.trade_size is not None
        before = books[i]
        sign = int(classify_trade(event.trade_price, before)) if before.valid else 0
        if imbalance == 0:
            if sign == 0:
                continue
            start = i
        if sign == 0:
            continue
        updated = imbalance + sign * event.trade_size
        if imbalance != 0 and (updated == 0 or updated * imbalance < 0):
            imbalance = 0
            continue
        imbalance = updated
        if abs(imbalance) < target:
            continue

        post = next_valid_mid(i)
        if post is None and not require_post_quote:
            post = last_valid_mid()
        if post is not None:
            total = sum(e.trade_size or 0 for e in events[start : i + 1] if e.is_trade)
            found.append(
                ReferenceEpisode(
                    t_first=events[start].timestamp,
                    t_last=event.timestamp,
                    imbalance=imbalance,
                    p0_half=books[start].mid_half_ticks,
                    post_half=post,
                    total=total,
                    accepted=(abs(imbalance) - target) / target <= overshoot_tol,
                )
            )
        imbalance = 0
    return found
