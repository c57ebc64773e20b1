"""
Dense complex linear algebra primitives
SVD, waterfilling power allocation and log-det rate evaluation
"""

from .errors import (
    SimulationError,
    NonFiniteInputError,
    ConvergenceError,
    NoEigenchannelError,
    RankDeficientError,
    DimensionMismatchError,
    ConstraintViolationError,
    RecordWriteError,
)
from .linalg import (
    SvdResult,
    PowerAllocation,
    svd,
    singular_values,
    waterfill,
    log_det_rate,
    db_to_linear,
    linear_to_db,
)

__all__ = [
    "SimulationError",
    "NonFiniteInputError",
    "ConvergenceError",
    "NoEigenchannelError",
    "RankDeficientError",
    "DimensionMismatchError",
    "ConstraintViolationError",
    "RecordWriteError",
    "SvdResult",
    "PowerAllocation",
    "svd",
    "singular_values",
    "waterfill",
    "log_det_rate",
    "db_to_linear",
    "linear_to_db",
]
