"""
Data Transfer Objects for the application layer.
"""

from tick2impact.application.dto.run_options import (
    AnalysisOptions,
    ReportOptions,
    SimulationOptions,
)
from tick2impact.application.dto.run_results import (
    AnalysisResult,
    ReportResult,
    ReportRow,
    SimulationResult,
)

__all__ = [
    "AnalysisOptions",
    "AnalysisResult",
    "ReportOptions",
    "ReportResult",
    "ReportRow",
    "SimulationOptions",
    "SimulationResult",
]
