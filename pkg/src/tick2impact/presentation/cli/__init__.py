"""
CLI module.
"""

from tick2impact.presentation.cli.app import app, main

__all__ = ["app", "main"]
