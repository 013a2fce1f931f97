"""
Artifact writing infrastructure.

Handles CSV output and template rendering.
"""

from tick2impact.infrastructure.writing.artifact_writer import ArtifactWriter, format_value

__all__ = [
    "ArtifactWriter",
    "format_value",
]
