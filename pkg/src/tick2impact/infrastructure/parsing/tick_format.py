"""
Canonical tick-file codec.

One event per line, eight comma-separated fields::

    timestamp_ns,kind,trade_price,trade_size,bid_price,ask_price,bid_size,ask_size

``kind`` is T or Q; fields the kind does not use are empty. A header line is
optional and recognised by a non-numeric first field.

Files are read two ways. ``parse_event_stream`` decodes line by line into
events. ``read_tick_columns`` reads blocks of whole lines straight into
column arrays with pandas; a block with anything unusual in it (CRLF
endings, stray whitespace, a bad line) is handed to the line parser, which
either decodes it or raises the same error the event path would.
"""

from __future__ import annotations

import io
import math
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, TYPE_CHECKING

import numpy as np
import pandas as pd

from tick2impact.domain.entities.events import EventColumns, EventKind, Level1Event
from tick2impact.shared.constants import (
    COLUMN_CHUNK_EVENTS,
    QUOTE_KIND,
    READ_BLOCK_BYTES,
    TICK_FIELD_COUNT,
    TICK_FIELDS,
    TICK_HEADER,
    TRADE_KIND,
)
from tick2impact.shared.exceptions import (
    MalformedLineError,
    NonMonotonicTimestampError,
    UnknownEventKindError,
)
from tick2impact.shared.logging import get_logger

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from tick2impact.domain.entities.session import SessionDescriptor
    from tick2impact.domain.value_objects.tick_grid import TickGrid

logger = get_logger("parser")

RawLines = IO[bytes] | IO[str] | Iterable[bytes | str]


def _is_ascii_int(text: str) -> bool:
    return text.isascii() and text.isdigit()


def is_header_line(line: str) -> bool:
    first = line.split(",", 1)[0].strip()
    return not _is_ascii_int(first.removeprefix("-"))


def decode_line(raw: bytes | str, line_number: int) -> str:
    """
    Text of one raw line.

    Raises:
        MalformedLineError: the bytes are not valid UTF-8
    """
    if isinstance(raw, str):
        return raw
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        shown = raw.decode("utf-8", errors="replace").rstrip()
        raise MalformedLineError(line_number, f"not valid UTF-8 ({exc.reason})", shown) from None


def _price(text: str, line_number: int, name: str, line: str) -> float:
    if "_" in text:
        raise MalformedLineError(line_number, f"{name} is not a plain decimal", line)
    try:
        value = float(text)
    except ValueError:
        raise MalformedLineError(line_number, f"{name} is not a number", line) from None
    if not math.isfinite(value):
        raise MalformedLineError(line_number, f"{name} is not finite", line)
    return value


def _size(text: str, line_number: int, name: str, line: str) -> int:
    if not _is_ascii_int(text):
        raise MalformedLineError(line_number, f"{name} is not a non-negative integer", line)
    return int(text)


def parse_line(line: str, line_number: int) -> Level1Event:
    """
    Parse one tick-file line.

    Args:
        line: The line without its terminator
        line_number: 1-based line number, used in errors

    Returns:
        The decoded event, remembering the text of each price

    Raises:
        MalformedLineError: bad field count, unparsable number, or a field
            present that the event kind does not use
        UnknownEventKindError: kind is neither T nor Q
    """
    fields = line.split(",")
    if len(fields) != TICK_FIELD_COUNT:
        raise MalformedLineError(
            line_number, f"expected {TICK_FIELD_COUNT} fields, got {len(fields)}", line
        )
    ts_text, kind, t_price, t_size, b_price, a_price, b_size, a_size = fields

    if not _is_ascii_int(ts_text.removeprefix("-")):
        raise MalformedLineError(line_number, "timestamp is not an integer", line)
    timestamp = int(ts_text)

    if kind == TRADE_KIND:
        if b_price or a_price or b_size or a_size:
            raise MalformedLineError(line_number, "trade carries quote fields", line)
        if not t_price or not t_size:
            raise MalformedLineError(line_number, "trade needs price and size", line)
        size = _size(t_size, line_number, "trade_size", line)
        if size == 0:
            raise MalformedLineError(line_number, "trade_size must be positive", line)
        return Level1Event(
            timestamp,
            EventKind.TRADE,
            trade_price=_price(t_price, line_number, "trade_price", line),
            trade_size=size,
            trade_price_text=t_price,
        )

    if kind == QUOTE_KIND:
        if t_price or t_size:
            raise MalformedLineError(line_number, "quote carries trade fields", line)
        if bool(b_price) != bool(b_size) or bool(a_price) != bool(a_size):
            raise MalformedLineError(line_number, "quote side needs both price and size", line)
        return Level1Event(
            timestamp,
            EventKind.QUOTE,
            bid_price=_price(b_price, line_number, "bid_price", line) if b_price else None,
            ask_price=_price(a_price, line_number, "ask_price", line) if a_price else None,
            bid_size=_size(b_size, line_number, "bid_size", line) if b_size else None,
            ask_size=_size(a_size, line_number, "ask_size", line) if a_size else None,
            bid_price_text=b_price or None,
            ask_price_text=a_price or None,
        )

    raise UnknownEventKindError(line_number, kind)


def _parse_lines(
    numbered: Iterable[tuple[int, bytes | str]],
    previous: int | None = None,
    header: bool = True,
) -> Iterator[Level1Event]:
    for line_number, raw in numbered:
        line = decode_line(raw, line_number).rstrip()
        if not line:
            continue
        if header:
            header = False
            if is_header_line(line):
                continue
        event = parse_line(line, line_number)
        if previous is not None and event.timestamp < previous:
            raise NonMonotonicTimestampError(line_number, event.timestamp, previous)
        previous = event.timestamp
        yield event


def parse_event_stream(
    source: RawLines,
    descriptor: SessionDescriptor | None = None,
) -> Iterator[Level1Event]:
    """
    Decode a tick stream lazily, in file order.

    Args:
        source: Binary or text stream (or any iterable of lines)
        descriptor: Session the stream belongs to; used for log context only

    Yields:
        Level1Event per non-empty line

    Raises:
        MalformedLineError, UnknownEventKindError: on the first bad line
        NonMonotonicTimestampError: when a timestamp goes backwards
    """
    count = 0
    for event in _parse_lines(enumerate(source, start=1)):
        count += 1
        yield event
    logger.debug(f"Parsed {count} events" + (f" for {descriptor.instrument}" if descriptor else ""))


_NEWLINE, _COMMA, _DOT, _MINUS = (ord(c) for c in "\n,.-")
_TRADE_BYTE, _QUOTE_BYTE = ord(TRADE_KIND), ord(QUOTE_KIND)
_PRICE_FIELDS = (2, 4, 5)
_SIZE_FIELDS = (3, 6, 7)
_NUMERIC_FIELDS = [TICK_FIELDS[i] for i in (0, *_PRICE_FIELDS, *_SIZE_FIELDS)]
# sizes come back as float so empty fields can be NaN
_READ_DTYPES = dict.fromkeys(_NUMERIC_FIELDS, np.float64) | {TICK_FIELDS[0]: np.int64}


def _running_count(mask: NDArray[np.bool_]) -> NDArray[np.int32]:
    counts = np.zeros(mask.size + 1, dtype=np.int32)
    np.cumsum(mask, dtype=np.int32, out=counts[1:])
    return counts


def _fast_block(block: bytes) -> EventColumns | None:
    """
    Columns of a block whose lines are all canonical, None otherwise.

    Every field is checked on the raw bytes before pandas sees the block:
    ASCII digits for timestamps and sizes, ``-?digits[.digits]`` for prices,
    a single T or Q for the kind and the field layout the kind requires.
    """
    buf = np.frombuffer(block, dtype=np.uint8)
    ends = np.flatnonzero(buf == _NEWLINE)
    if buf.size and buf[-1] != _NEWLINE:
        ends = np.append(ends, buf.size)
    if ends.size == 0:
        return EventColumns.empty()
    starts = np.concatenate(([0], ends[:-1] + 1))
    commas = np.flatnonzero(buf == _COMMA)
    per_line = np.searchsorted(commas, ends) - np.searchsorted(commas, starts)
    blank = ends == starts
    if not np.all(blank | (per_line == TICK_FIELD_COUNT - 1)):
        return None
    rows = ~blank
    if not rows.any():
        return EventColumns.empty()

    cuts = commas.reshape(-1, TICK_FIELD_COUNT - 1)
    first = np.column_stack((starts[rows], cuts + 1))
    last = np.column_stack((cuts, ends[rows]))
    width = last - first
    present = width > 0

    digit = (buf >= ord("0")) & (buf <= ord("9"))
    digits = _running_count(digit)
    dots = _running_count(buf == _DOT)
    minus = _running_count(buf == _MINUS)

    def count(table: NDArray[np.int32], col: int) -> NDArray[np.int32]:
        return table[last[:, col]] - table[first[:, col]]

    ok = present[:, 0] & (count(digits, 0) == width[:, 0]) & (width[:, 1] == 1)
    for col in _SIZE_FIELDS:
        ok &= count(digits, col) == width[:, col]
    for col in _PRICE_FIELDS:
        n_digits, n_dots, n_minus = count(digits, col), count(dots, col), count(minus, col)
        leading_minus = buf[first[:, col]] == _MINUS
        ok &= n_digits + n_dots + n_minus == width[:, col]
        ok &= (n_dots <= 1) & ((n_minus == 0) | ((n_minus == 1) & leading_minus))
        ok &= ~present[:, col] | (n_digits > 0)

    kind = buf[first[:, 1]]
    is_trade = kind == _TRADE_BYTE
    trade_layout = is_trade & present[:, 2] & present[:, 3] & ~present[:, 4:].any(axis=1)
    quote_layout = (
        (kind == _QUOTE_BYTE)
        & ~present[:, 2]
        & ~present[:, 3]
        & (present[:, 4] == present[:, 6])
        & (present[:, 5] == present[:, 7])
    )
    if not np.all(ok & (trade_layout | quote_layout)):
        return None

    try:
        frame = pd.read_csv(
            io.BytesIO(block),
            header=None,
            names=list(TICK_FIELDS),
            usecols=_NUMERIC_FIELDS,
            dtype=_READ_DTYPES,
            engine="c",
            float_precision="high",
            keep_default_na=False,
            na_values=[""],
        )
    except (ValueError, OverflowError):
        return None
    if len(frame) != is_trade.size:
        return None

    def sizes(name: str) -> NDArray[np.int64]:
        return np.nan_to_num(frame[name].to_numpy(dtype=np.float64)).astype(np.int64)

    columns = EventColumns(
        timestamp=frame[TICK_FIELDS[0]].to_numpy(dtype=np.int64),
        is_trade=is_trade,
        trade_price=frame["trade_price"].to_numpy(dtype=np.float64),
        trade_size=sizes("trade_size"),
        bid_price=frame["bid_price"].to_numpy(dtype=np.float64),
        ask_price=frame["ask_price"].to_numpy(dtype=np.float64),
        bid_size=sizes("bid_size"),
        ask_size=sizes("ask_size"),
    )
    prices = np.column_stack((columns.trade_price, columns.bid_price, columns.ask_price))
    if np.isinf(prices).any() or np.any(is_trade & (columns.trade_size <= 0)):
        return None
    if np.any(columns.timestamp[1:] < columns.timestamp[:-1]):
        return None
    return columns


def _line_blocks(path: Path, block_bytes: int) -> Iterator[tuple[int, bytes]]:
    """Blocks of whole lines with the number of each block's first line."""
    line_number = 1
    carry = b""
    with path.open("rb") as handle:
        while chunk := handle.read(block_bytes):
            data = carry + chunk
            cut = data.rfind(b"\n") + 1
            if cut == 0:
                carry = data
                continue
            carry = data[cut:]
            yield line_number, data[:cut]
            line_number += data.count(b"\n", 0, cut)
    if carry:
        yield line_number, carry


def _strip_header(block: bytes, first_line: int) -> tuple[bytes, int, bool]:
    """Drop a leading header line; the flag says whether the first line is still ahead."""
    offset, line_number = 0, first_line
    while offset < len(block):
        end = block.find(b"\n", offset)
        stop = len(block) if end < 0 else end + 1
        line = decode_line(block[offset:stop], line_number)
        if line.strip():
            if is_header_line(line):
                return block[stop:], line_number + 1, False
            return block, first_line, False
        offset, line_number = stop, line_number + 1
    return block, first_line, True


def read_tick_columns(
    path: Path, block_bytes: int = READ_BLOCK_BYTES
) -> Iterator[EventColumns]:
    """
    Read a tick file as column chunks, one per block of lines.

    Accepts and rejects exactly what ``parse_event_stream`` does, with the
    same line numbers in its errors.

    Raises:
        MalformedLineError, UnknownEventKindError: on the first bad line
        NonMonotonicTimestampError: when a timestamp goes backwards
    """
    previous: int | None = None
    header_ahead = True
    blocks = by_line = events = 0
    for first_line, block in _line_blocks(path, block_bytes):
        if header_ahead:
            block, first_line, header_ahead = _strip_header(block, first_line)
        columns = _fast_block(block)
        if columns is not None and len(columns) and previous is not None:
            if columns.timestamp[0] < previous:
                columns = None
        if columns is None:
            by_line += 1
            numbered = enumerate(block.split(b"\n"), start=first_line)
            columns = EventColumns.from_events(list(_parse_lines(numbered, previous, False)))
        blocks += 1
        if len(columns):
            previous = int(columns.timestamp[-1])
            events += len(columns)
            yield columns
    logger.debug(f"Read {events} events from {path.name}: {blocks} blocks, {by_line} line by line")


def serialize_event(event: Level1Event, grid: TickGrid) -> str:
    """
    Render an event as one canonical tick-file line (no terminator).

    Prices keep the text they were read with; others are written with the
    grid's decimals.
    """
    fmt = grid.format_price
    if event.kind is EventKind.TRADE:
        assert event.trade_price is not None
        price = event.trade_price_text or fmt(event.trade_price)
        return f"{event.timestamp},{TRADE_KIND},{price},{event.trade_size},,,,"
    bid = event.bid_price_text or ("" if event.bid_price is None else fmt(event.bid_price))
    ask = event.ask_price_text or ("" if event.ask_price is None else fmt(event.ask_price))
    bid_size = "" if event.bid_size is None else str(event.bid_size)
    ask_size = "" if event.ask_size is None else str(event.ask_size)
    return f"{event.timestamp},{QUOTE_KIND},,,{bid},{ask},{bid_size},{ask_size}"


def serialize_events(
    events: Iterable[Level1Event], grid: TickGrid, header: bool = False
) -> Iterator[str]:
    """Render events as lines, optionally preceded by the header."""
    if header:
        yield TICK_HEADER
    for event in events:
        yield serialize_event(event, grid)


def write_tick_file(
    path: Path, events: Iterable[Level1Event], grid: TickGrid, header: bool = True
) -> int:
    """
    Write events to a canonical tick file.

    Returns:
        Number of events written
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with path.open("w", encoding="utf-8", newline="\n") as handle:
        if header:
            handle.write(TICK_HEADER + "\n")
        for event in events:
            handle.write(serialize_event(event, grid) + "\n")
            count += 1
    logger.debug(f"Wrote {count} events to {path}")
    return count


@dataclass(frozen=True)
class TickFile:
    """A tick file on disk paired with its session descriptor."""

    path: Path
    descriptor: SessionDescriptor
    block_bytes: int = READ_BLOCK_BYTES

    def events(self) -> Iterator[Level1Event]:
        with self.path.open("rb") as handle:
            yield from parse_event_stream(handle, self.descriptor)

    def column_chunks(self) -> Iterator[EventColumns]:
        return read_tick_columns(self.path, self.block_bytes)


@dataclass(frozen=True)
class InMemorySession:
    """Events already in memory, e.g. straight from the simulator."""

    descriptor: SessionDescriptor
    items: list[Level1Event] = field(default_factory=list)
    chunk_events: int = COLUMN_CHUNK_EVENTS

    def events(self) -> Iterator[Level1Event]:
        return iter(self.items)

    def column_chunks(self) -> Iterator[EventColumns]:
        for start in range(0, len(self.items), self.chunk_events):
            yield EventColumns.from_events(self.items[start : start + self.chunk_events])
