"""
SVD/waterfilling beamformer synthesis and rate evaluation
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike

from channel.matrices import check_unit_modulus
from numerics.errors import ConstraintViolationError, DimensionMismatchError, NoEigenchannelError, SimulationError
from numerics.linalg import PowerAllocation, as_matrix, log_det_rate, singular_values, svd, waterfill

RATE_TOL = 1e-6


def _power_budget_tol(total_power: float) -> float:
    return 1e-9 * max(1.0, total_power)


@dataclass(frozen=True)
class BeamformerSet:
    """Data-phase combiner, precoder and (optionally) RIS phases"""
    combiner: np.ndarray
    precoder: np.ndarray
    ris_phases: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.ris_phases is not None:
            check_unit_modulus(self.ris_phases, "selected RIS phase vector")

    @property
    def precoder_power(self) -> float:
        return float(np.sum(np.abs(self.precoder) ** 2))


@dataclass(frozen=True)
class RateReport:
    """Spectral efficiency achieved by a beamformer set and the capacity of the same channel"""
    spectral_efficiency: float
    capacity: float
    per_stream_power: PowerAllocation


def _check_streams(h: np.ndarray, n_streams: int) -> None:
    if not 1 <= n_streams <= min(h.shape):
        raise DimensionMismatchError(
            f"n_streams={n_streams} must lie in [1, {min(h.shape)}] for a {h.shape} channel"
        )


def optimal_beamformers(
    h: ArrayLike,
    n_streams: int,
    total_power: float,
    noise_var: float,
) -> BeamformerSet:
    """
    Capacity-achieving combiner and precoder for ``h``

    Args:
        h: Channel (true or estimated), N_r x N_t
        n_streams: Number of data streams N_s
        total_power: Transmit power budget (mW)
        noise_var: Noise power (mW)

    Returns:
        BeamformerSet with ``combiner = U[:, :N_s]`` and
        ``precoder = V[:, :N_s] diag(sqrt(P_l))``
    """
    h = as_matrix(h, "channel H")
    _check_streams(h, n_streams)
    decomposition = svd(h)
    if decomposition.s[0] <= 0.0:
        raise NoEigenchannelError("zero channel matrix has no singular direction")

    allocation = waterfill(decomposition.s, noise_var, total_power, n_streams)
    combiner = decomposition.u[:, :n_streams]
    precoder = decomposition.v[:, :n_streams] * np.sqrt(allocation.levels)
    beamformers = BeamformerSet(combiner=combiner, precoder=precoder)
    if beamformers.precoder_power > total_power + _power_budget_tol(total_power):
        raise ConstraintViolationError(
            f"precoder power {beamformers.precoder_power:.6e} mW exceeds budget {total_power:.6e} mW"
        )
    return beamformers


def capacity_from_singular_values(
    s: ArrayLike,
    n_streams: int,
    total_power: float,
    noise_var: float,
) -> float:
    """Waterfilled capacity over the first ``n_streams`` singular values"""
    s = np.asarray(s, dtype=float)
    if total_power == 0.0 or s.size == 0 or float(s.max()) <= 0.0:
        return 0.0
    allocation = waterfill(s, noise_var, total_power, n_streams)
    snr = allocation.levels * s[:n_streams] ** 2 / noise_var
    return float(np.sum(np.log1p(snr)) / np.log(2.0))


def channel_capacity(
    h: ArrayLike,
    n_streams: int,
    total_power: float,
    noise_var: float,
) -> float:
    """
    Capacity with ``n_streams`` eigenchannels under a total power budget

    A zero channel or zero power yields 0 rather than an error.
    """
    h = as_matrix(h, "channel H")
    _check_streams(h, n_streams)
    if total_power < 0 or noise_var <= 0:
        raise SimulationError("total_power must be non-negative and noise_var positive")
    return capacity_from_singular_values(singular_values(h), n_streams, total_power, noise_var)


def evaluate_rates(
    h_true: ArrayLike,
    beamformers: BeamformerSet,
    n_streams: int,
    total_power: float,
    noise_var: float,
) -> RateReport:
    """
    Rate of ``beamformers`` on the true channel next to that channel's capacity

    Raises:
        ConstraintViolationError: if the achieved rate exceeds capacity
    """
    h_true = as_matrix(h_true, "channel H")
    spectral_efficiency = log_det_rate(beamformers.combiner, h_true, beamformers.precoder, noise_var)
    s = singular_values(h_true)
    allocation = waterfill(s, noise_var, total_power, n_streams)
    capacity = capacity_from_singular_values(s, n_streams, total_power, noise_var)
    if spectral_efficiency > capacity + RATE_TOL:
        raise ConstraintViolationError(
            f"spectral efficiency {spectral_efficiency:.9f} exceeds capacity {capacity:.9f}"
        )
    return RateReport(
        spectral_efficiency=spectral_efficiency,
        capacity=capacity,
        per_stream_power=allocation,
    )
