"""spharr: isometry and mirror-closure analysis of central hyperplane
arrangements via great-circle cell complexes on the unit sphere."""

from .numeric import (
    DEFAULT_TOL,
    DegenerateInput,
    DimensionMismatch,
    GeometryError,
    PreconditionError,
    Tolerance,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "DegenerateInput",
    "DimensionMismatch",
    "GeometryError",
    "PreconditionError",
    "Tolerance",
    "__version__",
]
