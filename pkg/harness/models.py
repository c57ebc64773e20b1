"""
Result models for the experiment harness
"""

from dataclasses import dataclass
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator


class Method(str, Enum):
    """RIS configuration strategies compared in a sweep, in CSV row order"""
    PROPOSED = "proposed"
    RANDOM_RIS = "random_ris"
    EXHAUSTIVE_ORACLE = "exhaustive_oracle"


METHOD_ORDER = list(Method)


@dataclass(frozen=True)
class TrialOutcome:
    """Rates of one method on one channel realization at one transmit power"""
    trial: int
    ptx_dbm: float
    method: Method
    capacity: float
    spectral_efficiency: float


class ExperimentRecord(BaseModel):
    """
    Trial-averaged metrics for one (transmit power, method) point
    """
    model_config = ConfigDict(frozen=True)

    ptx_dbm: float = Field(..., description="Transmit power constraint P_TX in dBm")
    method: Method = Field(..., description="RIS configuration strategy")
    mean_capacity: float = Field(..., ge=0.0, description="Mean capacity in bits/s/Hz")
    mean_spectral_efficiency: float = Field(..., ge=0.0, description="Mean spectral efficiency in bits/s/Hz")
    trials: int = Field(..., ge=1, description="Number of channel realizations averaged")
    seed: int = Field(..., ge=0, description="Root seed of the sweep")

    @model_validator(mode="after")
    def _rate_below_capacity(self) -> "ExperimentRecord":
        if self.mean_spectral_efficiency > self.mean_capacity + 1e-6:
            raise ValueError("mean spectral efficiency exceeds mean capacity")
        return self
