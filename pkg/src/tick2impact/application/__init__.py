"""
Application layer.

Contains the services that orchestrate simulation, analysis and reporting.
"""

from tick2impact.application.services import AnalysisService, ReportService, SimulationService

__all__ = ["AnalysisService", "ReportService", "SimulationService"]
