"""
Tick-data parsing infrastructure.

Reads canonical tick files, their descriptor sidecars and the toolkit's own
artifacts back into domain objects.
"""

from tick2impact.infrastructure.parsing.artifact_reader import (
    read_bins,
    read_episodes,
    read_histogram,
    read_summary,
    read_table,
    read_truth,
)
from tick2impact.infrastructure.parsing.descriptor import (
    read_descriptor,
    render_descriptor,
    write_descriptor,
)
from tick2impact.infrastructure.parsing.tick_format import (
    InMemorySession,
    TickFile,
    decode_line,
    parse_event_stream,
    parse_line,
    read_tick_columns,
    serialize_event,
    serialize_events,
    write_tick_file,
)

__all__ = [
    "InMemorySession",
    "TickFile",
    "decode_line",
    "parse_event_stream",
    "parse_line",
    "read_bins",
    "read_descriptor",
    "read_episodes",
    "read_histogram",
    "read_summary",
    "read_table",
    "read_tick_columns",
    "read_truth",
    "render_descriptor",
    "serialize_event",
    "serialize_events",
    "write_descriptor",
    "write_tick_file",
]
