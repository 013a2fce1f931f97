"""Tests for tick2impact."""
