"""Central-upwind finite-volume solver for 1-D and 2-D ideal MHD with a
constrained-transport, divergence-free magnetic-field update."""

from .core import AdmissibilityError
from .problems import PROBLEMS, get_problem
from .reconstruct import Limiter
from .timestepper import Simulation1D, Simulation2D, SimState, SolverError

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError",
    "Limiter",
    "PROBLEMS",
    "SimState",
    "Simulation1D",
    "Simulation2D",
    "SolverError",
    "get_problem",
    "__version__",
]
