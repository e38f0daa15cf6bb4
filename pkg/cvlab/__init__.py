"""
cvlab: an exact computational lab for polynomial valuations on cones of
piecewise-linear convex functions.
"""

from .config import LabConfig, get_config, load_environment, set_config
from .errors import LabError

__version__ = "0.1.0"

__all__ = ["LabConfig", "LabError", "get_config", "load_environment", "set_config", "__version__"]
