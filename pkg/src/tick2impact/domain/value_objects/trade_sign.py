"""
Trade sign and episode direction.
"""

from __future__ import annotations

from enum import IntEnum


class TradeSign(IntEnum):
    """Aggressor side of a trade: at/above the ask, at/below the bid, or inside."""

    BUY = 1
    NONE = 0
    SELL = -1


class Direction(IntEnum):
    """Direction of a completed imbalance episode (sign of the final imbalance)."""

    BUY = 1
    SELL = -1

    @classmethod
    def of(cls, imbalance: int) -> Direction:
        if imbalance == 0:
            raise ValueError("zero imbalance has no direction")
        return cls.BUY if imbalance > 0 else cls.SELL

    @property
    def label(self) -> str:
        return "buy" if self is Direction.BUY else "sell"

    @classmethod
    def from_label(cls, label: str) -> Direction:
        match label.strip().lower():
            case "buy" | "+1" | "1":
                return cls.BUY
            case "sell" | "-1":
                return cls.SELL
            case _:
                raise ValueError(f"Unknown direction: {label!r}")
