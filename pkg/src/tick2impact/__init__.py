"""
Trade-imbalance market impact toolkit.

Measures how far the mid-price moves after trade imbalances of a given
volume, compares the result with the half-tick estimator, and generates
synthetic Level-1 sessions with known ground truth.
"""

__version__ = "1.0.0"
__author__ = "tick2impact"

from tick2impact.application.services import AnalysisService, ReportService, SimulationService
from tick2impact.presentation.cli import main

__all__ = ["AnalysisService", "ReportService", "SimulationService", "main", "__version__"]
