"""
Logging configuration for tick2impact.

Provides rich console logging and a diagnostics collector for pipeline runs.
"""

import logging
from collections import Counter
from typing import Any

from rich.console import Console
from rich.logging import RichHandler

# Global console instance for rich output
console = Console(stderr=True)


def setup_logging(
    level: int = logging.INFO,
    verbose: bool = False,
) -> logging.Logger:
    """
    Configure logging for the application.

    Args:
        level: The logging level (default: INFO)
        verbose: If True, sets DEBUG level and shows time and source location

    Returns:
        Configured package logger
    """
    if verbose:
        level = logging.DEBUG

    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[
            RichHandler(
                console=console,
                show_time=verbose,
                show_path=verbose,
                rich_tracebacks=True,
                tracebacks_show_locals=verbose,
            )
        ],
        force=True,
    )

    logger = logging.getLogger("tick2impact")
    logger.setLevel(level)

    return logger


def get_logger(name: str | None = None) -> logging.Logger:
    """Get a logger instance for the given name."""
    if name:
        return logging.getLogger(f"tick2impact.{name}")
    return logging.getLogger("tick2impact")


class RunDiagnostics:
    """
    Warnings and named counters accumulated during a pipeline run.

    Counters cover things the pipeline skips rather than fails on
    (pre-open events, invalid quotes, episodes without a post-trade quote).
    """

    def __init__(self, verbose: bool = False) -> None:
        self.counters: Counter[str] = Counter()
        self.warnings: list[str] = []
        self.verbose = verbose
        self._logger = get_logger("diagnostics")

    def count(self, name: str, amount: int = 1) -> None:
        """Increment a named counter."""
        if amount:
            self.counters[name] += amount
            if self.verbose:
                self._logger.debug(f"{name} += {amount}")

    def merge_counts(self, counts: dict[str, int], prefix: str = "") -> None:
        """Add a batch of counters, optionally namespaced."""
        for name, amount in counts.items():
            self.count(f"{prefix}{name}", amount)

    def add_warning(self, message: str, context: dict[str, Any] | None = None) -> None:
        """Record and log a warning."""
        full_message = message
        if context:
            full_message = f"{message} ({context})"
        self.warnings.append(full_message)
        self._logger.warning(full_message)

    @property
    def has_warnings(self) -> bool:
        return len(self.warnings) > 0
