"""
Custom exceptions for tick2impact.

All exceptions inherit from Tick2ImpactError for easy catching.
Data problems derive from TickDataError, configuration problems from ConfigError;
the CLI maps the two families to distinct exit codes.
"""

from typing import Any


class Tick2ImpactError(Exception):
    """Base exception for all tick2impact errors."""

    def __init__(self, message: str, details: dict[str, Any] | None = None) -> None:
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def __str__(self) -> str:
        if self.details:
            detail_str = ", ".join(f"{k}={v}" for k, v in self.details.items())
            return f"{self.message} ({detail_str})"
        return self.message


class TickDataError(Tick2ImpactError):
    """Market data that cannot be processed."""


class MalformedLineError(TickDataError):
    """A tick-file line with a bad field count or an unparsable number."""

    def __init__(self, line_number: int, reason: str, line: str | None = None) -> None:
        details: dict[str, Any] = {"line": line_number}
        if line is not None:
            details["text"] = line[:80] + "..." if len(line) > 80 else line
        super().__init__(f"Malformed line: {reason}", details)
        self.line_number = line_number


class NonMonotonicTimestampError(TickDataError):
    """Timestamps went backwards within a session stream."""

    def __init__(self, line_number: int, timestamp: int, previous: int) -> None:
        super().__init__(
            "Timestamp goes backwards",
            {"line": line_number, "timestamp": timestamp, "previous": previous},
        )
        self.line_number = line_number


class UnknownEventKindError(TickDataError):
    """Event kind field is neither T nor Q."""

    def __init__(self, line_number: int, kind: str) -> None:
        super().__init__(f"Unknown event kind: {kind!r}", {"line": line_number})
        self.line_number = line_number


class EmptySessionError(TickDataError):
    """The session contains no usable two-sided quote."""

    def __init__(self, message: str = "Session has no two-sided quote") -> None:
        super().__init__(message)


class NoQuoteYetError(TickDataError):
    """A trade was classified before the book had a two-sided quote."""

    def __init__(self, timestamp: int | None = None) -> None:
        details = {"timestamp": timestamp} if timestamp is not None else None
        super().__init__("Book has no two-sided quote yet", details)


class ZeroVolumeWindowError(TickDataError):
    """Participation requested for an episode with no traded volume."""

    def __init__(self) -> None:
        super().__init__("Episode window has zero traded volume")


class ConfigError(Tick2ImpactError):
    """Invalid or missing configuration."""


class ConfigInvalidError(ConfigError):
    """A configuration value is missing or out of range."""

    def __init__(self, message: str, key: str | None = None, source: str | None = None) -> None:
        details = {}
        if key:
            details["key"] = key
        if source:
            details["source"] = source
        super().__init__(message, details)
        self.key = key


class DescriptorError(ConfigError):
    """Session descriptor sidecar cannot be read."""

    def __init__(self, message: str, path: str | None = None) -> None:
        super().__init__(message, {"path": path} if path else None)


class StatisticsError(Tick2ImpactError):
    """Statistical computation cannot be carried out."""


class DegenerateDesignError(StatisticsError):
    """Regression design has no spread in the explanatory variable."""

    def __init__(self, message: str = "All volumes are equal; slope is undefined") -> None:
        super().__init__(message)


class InsufficientDataError(StatisticsError):
    """Not enough observations for the requested statistic."""

    def __init__(self, message: str, required: int | None = None, got: int | None = None) -> None:
        details = {}
        if required is not None:
            details["required"] = required
        if got is not None:
            details["got"] = got
        super().__init__(message, details)


class ArtifactError(Tick2ImpactError):
    """An output artifact cannot be written or read back."""

    def __init__(self, message: str, path: str | None = None) -> None:
        super().__init__(message, {"path": path} if path else None)
