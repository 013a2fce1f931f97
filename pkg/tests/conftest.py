"""Pytest configuration and fixtures."""

from __future__ import annotations

from collections.abc import Callable
from pathlib import Path

import pytest

from tests.builders import DESCRIPTOR
from tick2impact.domain.entities.session import SessionDescriptor
from tick2impact.infrastructure.simulation.config import SimConfig, sim_config_from_mapping


@pytest.fixture
def descriptor() -> SessionDescriptor:
    """100-second session on a 0.01 tick grid."""
    return DESCRIPTOR


@pytest.fixture
def output_dir(tmp_path: Path) -> Path:
    """Return temporary output directory."""
    output = tmp_path / "output"
    output.mkdir()
    return output


@pytest.fixture
def sim_config() -> Callable[..., SimConfig]:
    """Factory for simulator configs: a quiet constant-touch market plus overrides."""

    def make(**overrides: object) -> SimConfig:
        data: dict[str, object] = {
            "seed": 7,
            "session_seconds": 200.0,
            "touch_size": 10,
            "noise_rate": 0.5,
            "noise_size_mean": 1.0,
        }
        data.update(overrides)
        return sim_config_from_mapping(data)

    return make


@pytest.fixture
def sim_config_file(tmp_path: Path) -> Callable[[str], Path]:
    """Write simulator TOML text to a file and return its path."""

    def write(text: str, name: str = "sim.toml") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write
