"""
Domain protocols - Interfaces for infrastructure.
"""

from tick2impact.domain.protocols.sink import IArtifactSink
from tick2impact.domain.protocols.source import IEventSource

__all__ = [
    "IArtifactSink",
    "IEventSource",
]
