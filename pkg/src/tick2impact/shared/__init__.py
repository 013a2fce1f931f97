"""Shared kernel - constants, exceptions, results, logging and settings."""

from tick2impact.shared.constants import (
    ESTIMATED_SLOPE_TICKS,
    NANOS_PER_SECOND,
    TICK_FIELDS,
)
from tick2impact.shared.exceptions import (
    ConfigError,
    ConfigInvalidError,
    DegenerateDesignError,
    EmptySessionError,
    MalformedLineError,
    NonMonotonicTimestampError,
    NoQuoteYetError,
    Tick2ImpactError,
    TickDataError,
    UnknownEventKindError,
    ZeroVolumeWindowError,
)
from tick2impact.shared.result import Err, Ok, Result

__all__ = [
    "ESTIMATED_SLOPE_TICKS",
    "NANOS_PER_SECOND",
    "TICK_FIELDS",
    "ConfigError",
    "ConfigInvalidError",
    "DegenerateDesignError",
    "EmptySessionError",
    "Err",
    "MalformedLineError",
    "NoQuoteYetError",
    "NonMonotonicTimestampError",
    "Ok",
    "Result",
    "Tick2ImpactError",
    "TickDataError",
    "UnknownEventKindError",
    "ZeroVolumeWindowError",
]
