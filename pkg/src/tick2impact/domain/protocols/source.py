"""
Event source protocol.

Defines the interface the analysis pipeline reads sessions through.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Protocol, runtime_checkable

if TYPE_CHECKING:
    from collections.abc import Iterator

    from tick2impact.domain.entities.events import EventColumns, Level1Event
    from tick2impact.domain.entities.session import SessionDescriptor


@runtime_checkable
class IEventSource(Protocol):
    """
    A session's events in time order.

    Implementations must be re-iterable: each call to ``events`` or
    ``column_chunks`` starts a fresh pass from the first event.
    """

    @property
    def descriptor(self) -> SessionDescriptor:
        """Instrument, tick size and session bounds."""
        ...

    def events(self) -> Iterator[Level1Event]:
        """
        Iterate over the session's events.

        Raises:
            TickDataError: on malformed input, at the offending event
        """
        ...

    def column_chunks(self) -> Iterator[EventColumns]:
        """
        The same events as consecutive column chunks.

        Raises:
            TickDataError: on malformed input, at the offending event
        """
        ...
