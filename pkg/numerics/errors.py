"""
Exception types shared by every simulation package
"""


class SimulationError(ValueError):
    """Base class for errors raised by the simulation library"""


class NonFiniteInputError(SimulationError):
    """A matrix or vector contained NaN or Inf entries"""


class ConvergenceError(SimulationError):
    """A LAPACK routine failed to converge"""


class NoEigenchannelError(SimulationError):
    """Every singular value is zero, so no power can be allocated"""


class RankDeficientError(SimulationError):
    """A matrix that must have full column rank does not"""


class DimensionMismatchError(SimulationError):
    """Operands have non-conformable shapes"""


class ConstraintViolationError(SimulationError):
    """A physical constraint (unit modulus, power budget, rate ordering) failed"""


class RecordWriteError(SimulationError):
    """Experiment records could not be persisted"""
