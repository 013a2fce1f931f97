"""
Trade sign classification against the prevailing quote.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from tick2impact.domain.value_objects.trade_sign import TradeSign
from tick2impact.shared.exceptions import NoQuoteYetError

if TYPE_CHECKING:
    from tick2impact.domain.entities.book import BookState


def sign_of(price: float, bid: float, ask: float, tolerance: float) -> int:
    """+1 at or above the ask, -1 at or below the bid, 0 strictly inside."""
    if price >= ask - tolerance:
        return 1
    if price <= bid + tolerance:
        return -1
    return 0


def classify_trade(price: float, book: BookState) -> TradeSign:
    """
    Sign a trade against the book as it stood just before the trade.

    Raises:
        NoQuoteYetError: the book has no valid two-sided quote
    """
    if not book.valid or book.bid_price is None or book.ask_price is None:
        raise NoQuoteYetError(book.last_quote_time)
    return TradeSign(sign_of(price, book.bid_price, book.ask_price, book.grid.tolerance))
