"""
Complex dense linear algebra for link-level evaluation
SVD with driver fallback, closed-form waterfilling and the log-det rate
"""

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from .errors import (
    ConvergenceError,
    DimensionMismatchError,
    NoEigenchannelError,
    NonFiniteInputError,
    RankDeficientError,
    SimulationError,
)

logger = logging.getLogger(__name__)

# Singular values below this fraction of the largest one carry no power.
ZERO_SINGULAR_VALUE_RTOL = 1e-12


@dataclass(frozen=True)
class SvdResult:
    """
    Thin SVD ``A = u @ diag(s) @ v^H``

    ``s`` is sorted descending; ``u`` and ``v`` have orthonormal columns.
    Column phases are unconstrained.
    """
    u: np.ndarray
    s: np.ndarray
    v: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.u * self.s) @ self.v.conj().T


@dataclass(frozen=True)
class PowerAllocation:
    """Per-eigenchannel transmit powers (mW) and the common water level"""
    levels: np.ndarray
    water_level: float
    n_active: int

    @property
    def total(self) -> float:
        return float(np.sum(self.levels))


def as_matrix(a: ArrayLike, name: str = "A") -> np.ndarray:
    """
    Coerce input to a finite complex 2-D array

    Args:
        a: Matrix-like input
        name: Symbol used in error messages

    Returns:
        complex128 array with at least one row and one column
    """
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise DimensionMismatchError(f"{name} must be a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NonFiniteInputError(f"{name} contains NaN or Inf entries")
    return m


def svd(a: ArrayLike) -> SvdResult:
    """
    Thin singular value decomposition

    Tries the divide-and-conquer driver first and falls back to the
    QR-iteration driver when it does not converge.

    Args:
        a: Finite complex matrix

    Returns:
        SvdResult with min(rows, cols) singular values
    """
    m = as_matrix(a)
    try:
        u, s, vh = scipy.linalg.svd(m, full_matrices=False, lapack_driver="gesdd", check_finite=False)
    except np.linalg.LinAlgError:
        logger.debug("gesdd did not converge on %s matrix, retrying with gesvd", m.shape)
        try:
            u, s, vh = scipy.linalg.svd(m, full_matrices=False, lapack_driver="gesvd", check_finite=False)
        except np.linalg.LinAlgError as e:
            raise ConvergenceError(f"SVD failed to converge for {m.shape} matrix: {e}") from e
    return SvdResult(u=u, s=s, v=vh.conj().T)


def singular_values(a: ArrayLike) -> np.ndarray:
    """Singular values only, descending"""
    m = as_matrix(a)
    try:
        return scipy.linalg.svdvals(m, check_finite=False)
    except np.linalg.LinAlgError:
        return svd(m).s


def waterfill(
    singular_values: ArrayLike,
    noise_var: float,
    total_power: float,
    max_streams: int,
) -> PowerAllocation:
    """
    Capacity-optimal power split over the first ``max_streams`` eigenchannels

    The water level is found in closed form: eigenchannels are ordered by
    their noise floor ``noise_var / s**2`` and the largest active set whose
    level stays above its weakest floor is kept.

    Args:
        singular_values: Non-negative channel singular values
        noise_var: Noise power per receive antenna (mW)
        total_power: Transmit power budget (mW)
        max_streams: Number of eigenchannels eligible for power

    Returns:
        PowerAllocation whose levels follow the input order
    """
    s = np.asarray(singular_values, dtype=float)
    if s.ndim != 1 or s.size == 0:
        raise DimensionMismatchError("singular values must be a non-empty vector")
    if not np.all(np.isfinite(s)):
        raise NonFiniteInputError("singular values contain NaN or Inf")
    if np.any(s < 0):
        raise SimulationError("singular values must be non-negative")
    if not 1 <= max_streams <= s.size:
        raise DimensionMismatchError(
            f"max_streams={max_streams} must lie in [1, {s.size}]"
        )
    if noise_var <= 0 or total_power <= 0:
        raise SimulationError("noise_var and total_power must be positive")

    s = s[:max_streams]
    s_max = float(s.max())
    if s_max <= 0.0:
        raise NoEigenchannelError("all singular values are zero, no usable eigenchannel")

    usable = s > ZERO_SINGULAR_VALUE_RTOL * s_max
    floors = np.full(s.shape, np.inf)
    floors[usable] = noise_var / s[usable] ** 2

    order = np.argsort(floors, kind="stable")[: int(usable.sum())]
    sorted_floors = floors[order]
    prefix = np.cumsum(sorted_floors)
    candidate_levels = (total_power + prefix) / np.arange(1, order.size + 1)
    feasible = candidate_levels > sorted_floors
    # the strongest eigenchannel is always active, even if P is below rounding
    feasible[0] = True
    n_active = int(np.flatnonzero(feasible)[-1]) + 1

    active_floors = sorted_floors[:n_active]
    # sum_m (f_l - f_m) keeps the strongest channel exact when n_active == 1
    excess = (active_floors[:, None] - active_floors[None, :]).sum(axis=1)
    active_levels = np.clip((total_power - excess) / n_active, 0.0, None)
    active_levels *= total_power / active_levels.sum()

    levels = np.zeros(s.shape)
    levels[order[:n_active]] = active_levels
    water_level = float(candidate_levels[n_active - 1])
    return PowerAllocation(levels=levels, water_level=water_level, n_active=n_active)


def log_det_rate(w: ArrayLike, h: ArrayLike, f: ArrayLike, noise_var: float) -> float:
    """
    Achievable spectral efficiency of a linear precoder/combiner pair

    Evaluates ``log2 det(I + R^{-1} W^H H F F^H H^H W)`` with
    ``R = noise_var * W^H W`` by whitening through the Cholesky factor of
    ``W^H W``.

    Args:
        w: Combiner, N_r x N_s
        h: Channel, N_r x N_t
        f: Precoder, N_t x N_s
        noise_var: Noise power (mW)

    Returns:
        Rate in bits/s/Hz
    """
    w = as_matrix(w, "combiner W")
    h = as_matrix(h, "channel H")
    f = as_matrix(f, "precoder F")
    if noise_var <= 0:
        raise SimulationError("noise_var must be positive")
    if w.shape[0] != h.shape[0] or h.shape[1] != f.shape[0] or w.shape[1] != f.shape[1]:
        raise DimensionMismatchError(
            f"non-conformable shapes W {w.shape}, H {h.shape}, F {f.shape}"
        )
    if np.linalg.matrix_rank(w) < w.shape[1]:
        raise RankDeficientError("combiner W must have linearly independent columns")

    gram = w.conj().T @ w
    try:
        chol = scipy.linalg.cholesky(gram, lower=True, check_finite=False)
    except np.linalg.LinAlgError as e:
        raise RankDeficientError(f"combiner W has a singular Gram matrix: {e}") from e

    whitened = scipy.linalg.solve_triangular(chol, w.conj().T @ h @ f, lower=True)
    gains = singular_values(whitened) ** 2 / noise_var
    return float(np.sum(np.log1p(gains)) / np.log(2.0))


def db_to_linear(value_db: float) -> float:
    """dB (or dBm) to linear (or mW)"""
    return float(10.0 ** (value_db / 10.0))


def linear_to_db(value: float) -> float:
    """Linear (or mW) to dB (or dBm)"""
    return float(10.0 * np.log10(value))
