"""
Presentation layer - CLI interface.
"""

from tick2impact.presentation.cli import app, main

__all__ = ["app", "main"]
