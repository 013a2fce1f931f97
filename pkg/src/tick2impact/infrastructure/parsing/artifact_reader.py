"""
Readers for the toolkit's own artifacts.

Used by the report command and by round-trip checks: every file the
toolkit writes can be read back here.
"""

from __future__ import annotations

import csv
from pathlib import Path

from tick2impact.shared.constants import (
    BIN_COLUMNS,
    EPISODE_COLUMNS,
    HISTOGRAM_COLUMNS,
    TABLE_COLUMNS,
    TRUTH_COLUMNS,
)
from tick2impact.shared.exceptions import ArtifactError


def read_csv_rows(path: Path, columns: tuple[str, ...]) -> list[dict[str, str]]:
    """
    Read a CSV artifact, checking its header.

    Raises:
        ArtifactError: the file is missing or has unexpected columns
    """
    try:
        with path.open(encoding="utf-8", newline="") as handle:
            reader = csv.DictReader(handle)
            if tuple(reader.fieldnames or ()) != columns:
                raise ArtifactError(
                    f"Unexpected columns {reader.fieldnames}, expected {list(columns)}",
                    path=str(path),
                )
            return list(reader)
    except FileNotFoundError:
        raise ArtifactError("Artifact not found", path=str(path)) from None


def read_episodes(path: Path) -> list[dict[str, str]]:
    return read_csv_rows(path, EPISODE_COLUMNS)


def read_bins(path: Path) -> list[dict[str, str]]:
    return read_csv_rows(path, BIN_COLUMNS)


def read_histogram(path: Path) -> list[dict[str, str]]:
    return read_csv_rows(path, HISTOGRAM_COLUMNS)


def read_truth(path: Path) -> list[dict[str, str]]:
    return read_csv_rows(path, TRUTH_COLUMNS)


def read_table(path: Path) -> list[dict[str, str]]:
    return read_csv_rows(path, TABLE_COLUMNS)


def read_summary(path: Path) -> dict[str, str]:
    """
    Read a ``key = value`` summary; ``#`` starts a comment line.

    Raises:
        ArtifactError: the file is missing or a line has no ``=``
    """
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ArtifactError("Summary not found", path=str(path)) from None

    values: dict[str, str] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ArtifactError(f"Line {number} is not key = value", path=str(path))
        values[key.strip()] = value.strip()
    return values
