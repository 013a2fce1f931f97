"""
Session descriptor sidecar.

A small ``key = value`` file (valid TOML) next to each tick file::

    instrument = "CLc1"
    tick_size = "0.01"
    session_start_ns = 0
    session_end_ns = 28800000000000
"""

from __future__ import annotations

import tomllib
from decimal import Decimal, InvalidOperation
from pathlib import Path
from typing import Any

from tick2impact.domain.entities.session import SessionDescriptor
from tick2impact.shared.exceptions import ConfigInvalidError, DescriptorError
from tick2impact.shared.logging import get_logger

logger = get_logger("descriptor")

REQUIRED_KEYS = ("instrument", "tick_size", "session_start_ns", "session_end_ns")


def descriptor_from_mapping(data: dict[str, Any], source: str | None = None) -> SessionDescriptor:
    """
    Build a descriptor from parsed key/value data.

    Raises:
        ConfigInvalidError: naming the first missing or invalid key
    """
    for key in REQUIRED_KEYS:
        if key not in data:
            raise ConfigInvalidError(f"Missing key: {key}", key=key, source=source)

    try:
        tick_size = Decimal(str(data["tick_size"]))
    except InvalidOperation:
        raise ConfigInvalidError(
            f"tick_size is not a decimal: {data['tick_size']!r}", key="tick_size", source=source
        ) from None

    bounds: dict[str, int] = {}
    for key in ("session_start_ns", "session_end_ns"):
        value = data[key]
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigInvalidError(f"{key} must be an integer", key=key, source=source)
        bounds[key] = value

    return SessionDescriptor(
        instrument=str(data["instrument"]),
        tick_size=tick_size,
        session_start_ns=bounds["session_start_ns"],
        session_end_ns=bounds["session_end_ns"],
    )


def read_descriptor(path: Path) -> SessionDescriptor:
    """
    Read a descriptor sidecar.

    Raises:
        DescriptorError: file missing or not parseable
        ConfigInvalidError: a key is missing or out of range
    """
    try:
        with path.open("rb") as handle:
            data = tomllib.load(handle)
    except FileNotFoundError:
        raise DescriptorError("Descriptor not found", path=str(path)) from None
    except tomllib.TOMLDecodeError as e:
        raise DescriptorError(f"Descriptor is not key = value text: {e}", path=str(path)) from e

    descriptor = descriptor_from_mapping(data, source=str(path))
    logger.debug(f"Loaded descriptor {descriptor}")
    return descriptor


def render_descriptor(descriptor: SessionDescriptor) -> str:
    """Render a descriptor as sidecar text."""
    instrument = descriptor.instrument.replace("\\", "\\\\").replace('"', '\\"')
    return (
        f'instrument = "{instrument}"\n'
        f'tick_size = "{descriptor.tick_size}"\n'
        f"session_start_ns = {descriptor.session_start_ns}\n"
        f"session_end_ns = {descriptor.session_end_ns}\n"
    )


def write_descriptor(descriptor: SessionDescriptor, path: Path) -> Path:
    """Write a descriptor sidecar."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_descriptor(descriptor), encoding="utf-8")
    return path
