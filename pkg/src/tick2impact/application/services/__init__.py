"""
Application services.
"""

from tick2impact.application.services.analysis_service import AnalysisService
from tick2impact.application.services.report_service import ReportService, read_report_row
from tick2impact.application.services.simulation_service import SimulationService

__all__ = ["AnalysisService", "ReportService", "SimulationService", "read_report_row"]
