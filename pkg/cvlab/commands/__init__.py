"""
Command families of the cvlab command line.
"""

from .base import LabTool, parse_point, parse_points
from .bodies import BodyTool
from .dual import DualTool
from .functions import FunctionTool
from .measure import MeasureTool
from .suite import SuiteTool
from .valuations import ValuationTool

TOOLS = {
    tool.name: tool
    for tool in (FunctionTool(), BodyTool(), DualTool(), MeasureTool(), ValuationTool(), SuiteTool())
}

__all__ = [
    "TOOLS",
    "BodyTool",
    "DualTool",
    "FunctionTool",
    "LabTool",
    "MeasureTool",
    "SuiteTool",
    "ValuationTool",
    "parse_point",
    "parse_points",
]
