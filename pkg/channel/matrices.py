"""
Channel matrix assembly and RIS cascading
"""

import numpy as np
from numpy.typing import ArrayLike

from numerics.errors import ConstraintViolationError, DimensionMismatchError
from numerics.linalg import as_matrix
from .geometry import UpaGeometry
from .paths import PathSet

UNIT_MODULUS_TOL = 1e-12


def assemble_channel(paths: PathSet, rx_geom: UpaGeometry, tx_geom: UpaGeometry) -> np.ndarray:
    """
    Sum of per-path outer products ``alpha_q a_r a_t^H``

    Returns:
        rx_geom.n_elements x tx_geom.n_elements complex matrix
    """
    a_r = paths.receive_responses(rx_geom)
    a_t = paths.transmit_responses(tx_geom)
    return (a_r * paths.gains) @ a_t.conj().T


def check_unit_modulus(phases: ArrayLike, name: str = "RIS phase vector") -> np.ndarray:
    """Reject any RIS reflection coefficient whose modulus is not 1"""
    v = np.asarray(phases, dtype=np.complex128).ravel()
    deviation = np.abs(np.abs(v) - 1.0)
    if v.size == 0 or not np.all(deviation <= UNIT_MODULUS_TOL):
        worst = float(deviation.max()) if v.size else float("nan")
        raise ConstraintViolationError(
            f"{name} must have unit-modulus entries, Phi = diag([e^(j theta_1), ..., e^(j theta_M)]); "
            f"worst deviation {worst:.3e}"
        )
    return v


def cascade(h_sr: ArrayLike, ris_phases: ArrayLike, h_ts: ArrayLike) -> np.ndarray:
    """
    End-to-end channel ``H_SR diag(phases) H_TS``

    Args:
        h_sr: RIS->RX channel, N_r x M
        ris_phases: Unit-modulus reflection coefficients, length M
        h_ts: TX->RIS channel, M x N_t

    Returns:
        N_r x N_t cascaded channel
    """
    h_sr = as_matrix(h_sr, "H_SR")
    h_ts = as_matrix(h_ts, "H_TS")
    v = check_unit_modulus(ris_phases)
    if h_sr.shape[1] != v.size or h_ts.shape[0] != v.size:
        raise DimensionMismatchError(
            f"RIS size mismatch: H_SR {h_sr.shape}, {v.size} phases, H_TS {h_ts.shape}"
        )
    return (h_sr * v) @ h_ts
