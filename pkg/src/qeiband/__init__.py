"""qeiband: lower and upper bounds on locally averaged quantum energy
densities, exact reference values for the same spacetimes, and the
machinery to verify that every exact value sits inside its band."""

__version__ = "0.1.0"

from .bounds import (
    BoundResult,
    Conformal2D,
    Cylinder,
    LinearAccel2D,
    MinkowskiInertial,
    MinkowskiNull,
    Misner,
    Rindler,
    Scenario,
    StaticBall,
    Torus,
    UniformAccel,
    bounds_for,
)
from .exact import StressTensorDiag
from .numerics import (
    EigenProblem1D,
    GridFunction,
    Interval,
    SeriesResult,
    find_root,
    integrate,
    sum_series,
    fd_min_eigenvalue,
)
from .report import ConsistencyReport, FigureData, check

__all__ = [
    "__version__",
    "BoundResult",
    "Conformal2D",
    "ConsistencyReport",
    "Cylinder",
    "EigenProblem1D",
    "FigureData",
    "GridFunction",
    "Interval",
    "LinearAccel2D",
    "MinkowskiInertial",
    "MinkowskiNull",
    "Misner",
    "Rindler",
    "Scenario",
    "SeriesResult",
    "StaticBall",
    "StressTensorDiag",
    "Torus",
    "UniformAccel",
    "bounds_for",
    "check",
    "find_root",
    "fd_min_eigenvalue",
    "integrate",
    "sum_series",
]
