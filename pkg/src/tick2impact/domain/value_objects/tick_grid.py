"""
Tick grid value object for handling prices.

Converts between currency prices, integer tick indices and half-tick mids.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from typing import Self

from tick2impact.shared.constants import PRICE_TOLERANCE


@dataclass(frozen=True, slots=True)
class TickGrid:
    """
    Immutable price grid defined by the exchange tick size.

    Prices on the book are integer multiples of the tick. Mid prices are kept
    as integer counts of half ticks so impact arithmetic stays exact.
    """

    tick_size: Decimal

    def __post_init__(self) -> None:
        if not self.tick_size.is_finite() or self.tick_size <= 0:
            raise ValueError(f"tick size must be positive, got {self.tick_size}")

    @classmethod
    def from_text(cls, text: str) -> Self:
        """Create a grid from a decimal string such as ``"0.01"`` or ``"0.015625"``."""
        try:
            return cls(Decimal(text.strip()))
        except InvalidOperation as e:
            raise ValueError(f"Invalid tick size: {text!r}") from e

    @property
    def delta(self) -> float:
        """Tick size in currency units."""
        return float(self.tick_size)

    @property
    def decimals(self) -> int:
        """Number of decimals needed to print any on-grid price."""
        exponent = self.tick_size.normalize().as_tuple().exponent
        assert isinstance(exponent, int)
        return max(0, -exponent)

    @property
    def tolerance(self) -> float:
        """Absolute price tolerance (a millionth of a tick)."""
        return self.delta * PRICE_TOLERANCE

    def to_ticks(self, price: float) -> int:
        """Nearest tick index for a price."""
        return round(price / self.delta)

    def is_on_grid(self, price: float) -> bool:
        """Check a price is a tick multiple within tolerance."""
        return abs(price - self.to_ticks(price) * self.delta) <= self.tolerance

    def price(self, ticks: int) -> float:
        """Currency price of a tick index."""
        return float(self.tick_size * ticks)

    def mid_price(self, half_ticks: int) -> float:
        """Currency price of a mid expressed in half ticks."""
        return float(self.tick_size * half_ticks / 2)

    def format_price(self, price: float) -> str:
        """Render a price with the grid's decimals, '.' separator, no grouping."""
        return f"{price:.{self.decimals}f}"

    def __str__(self) -> str:
        return str(self.tick_size)

    def __repr__(self) -> str:
        return f"TickGrid({self.tick_size})"
