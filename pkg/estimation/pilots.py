"""
Sparsity-matched pilot beamformers and pilot reception
"""

from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from channel.geometry import SystemGeometry
from channel.matrices import cascade
from channel.paths import PathSet
from numerics.errors import DimensionMismatchError, RankDeficientError, SimulationError
from numerics.linalg import as_matrix

Pair = Tuple[int, int]


@dataclass(frozen=True)
class PilotSuite:
    """
    Pilot combiner, precoder, symbols and RIS phase vectors

    ``phase_vectors[(i, j)]`` points the RIS from TX->RIS path ``i`` into
    RIS->RX path ``j``. ``power_scale`` is the factor applied to the unit-norm
    precoder columns so that ``||F_p||_F^2`` equals the pilot power.
    """
    combiner: np.ndarray
    precoder: np.ndarray
    symbols: np.ndarray
    phase_vectors: Dict[Pair, np.ndarray] = field(repr=False)
    schedule_len: int
    power_scale: float

    @property
    def n_streams(self) -> int:
        return int(self.symbols.shape[0])

    @property
    def pairs(self) -> list:
        return sorted(self.phase_vectors)


def ris_pilot_vector(a_r_ts_i: ArrayLike, a_t_sr_j: ArrayLike) -> np.ndarray:
    """
    RIS pilot phases ``M * conj(a_r) * a_t`` (entrywise)

    Args:
        a_r_ts_i: RIS-side receive response of TX->RIS path i, length M
        a_t_sr_j: RIS-side transmit response of RIS->RX path j, length M

    Returns:
        Unit-modulus vector of length M
    """
    a_r = np.asarray(a_r_ts_i, dtype=np.complex128).ravel()
    a_t = np.asarray(a_t_sr_j, dtype=np.complex128).ravel()
    if a_r.size != a_t.size:
        raise DimensionMismatchError(
            f"steering vectors differ in length: {a_r.size} vs {a_t.size}"
        )
    return a_r.size * a_r.conj() * a_t


def build_pilot_suite(
    paths_ts: PathSet,
    paths_sr: PathSet,
    geoms: SystemGeometry,
    n_streams: int,
    total_power: float,
) -> PilotSuite:
    """
    Build the pilot beamformers matched to the known path angles

    Args:
        paths_ts: TX->RIS paths
        paths_sr: RIS->RX paths
        geoms: Array geometries
        n_streams: Pilot streams N_s, at most the path count of either link
        total_power: Pilot transmit power (mW)

    Returns:
        PilotSuite with one phase vector per (i, j) path pair
    """
    if not 1 <= n_streams <= min(paths_ts.n_paths, paths_sr.n_paths):
        raise DimensionMismatchError(
            f"n_streams={n_streams} exceeds path counts "
            f"({paths_ts.n_paths} TX->RIS, {paths_sr.n_paths} RIS->RX)"
        )
    if total_power <= 0:
        raise SimulationError("pilot power must be positive")

    power_scale = float(np.sqrt(total_power / n_streams))
    combiner = paths_sr.receive_responses(geoms.rx)[:, :n_streams]
    precoder = power_scale * paths_ts.transmit_responses(geoms.tx)[:, :n_streams]
    symbols = scipy.linalg.dft(n_streams, scale="sqrtn")

    ris_rx = paths_ts.receive_responses(geoms.ris)
    ris_tx = paths_sr.transmit_responses(geoms.ris)
    phase_vectors = {
        (i, j): ris_pilot_vector(ris_rx[:, i], ris_tx[:, j])
        for i in range(paths_ts.n_paths)
        for j in range(paths_sr.n_paths)
    }
    return PilotSuite(
        combiner=combiner,
        precoder=precoder,
        symbols=symbols,
        phase_vectors=phase_vectors,
        schedule_len=paths_ts.n_paths * paths_sr.n_paths * n_streams,
        power_scale=power_scale,
    )


def pilot_observation(
    h_tot: np.ndarray,
    suite: PilotSuite,
    noise_var: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """Received pilot block ``W_p^H (H_tot F_p S_p + N)`` for an already adjusted channel"""
    if noise_var < 0:
        raise SimulationError("noise variance must be non-negative")
    n_r = suite.combiner.shape[0]
    noise = np.sqrt(noise_var / 2.0) * (
        rng.standard_normal((n_r, suite.n_streams)) + 1j * rng.standard_normal((n_r, suite.n_streams))
    )
    w_h = suite.combiner.conj().T
    return w_h @ h_tot @ suite.precoder @ suite.symbols + w_h @ noise


def simulate_pilot_rx(
    h_ts: ArrayLike,
    h_sr: ArrayLike,
    suite: PilotSuite,
    pair: Pair,
    noise_var: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """
    Pilot block received while the RIS applies ``phase_vectors[pair]``

    Args:
        h_ts: TX->RIS channel, M x N_t
        h_sr: RIS->RX channel, N_r x M
        suite: Pilot beamformers
        pair: Path pair (i, j)
        noise_var: Noise power per receive antenna (mW), 0 for noiseless
        rng: Generator for the noise block

    Returns:
        N_s x N_s received pilot matrix
    """
    try:
        phases = suite.phase_vectors[pair]
    except KeyError:
        raise SimulationError(f"no pilot phase vector for pair {pair}") from None
    return pilot_observation(cascade(h_sr, phases, h_ts), suite, noise_var, rng)


def equalize(y: ArrayLike, suite: PilotSuite) -> np.ndarray:
    """
    Remove the pilot symbols and the precoder power scale

    Returns:
        ``Y S_p^{-1} / power_scale``
    """
    y = as_matrix(y, "received pilot block Y")
    n_s = suite.n_streams
    if y.shape != (n_s, n_s):
        raise DimensionMismatchError(f"pilot block must be {n_s}x{n_s}, got {y.shape}")
    try:
        # Y S^{-1} = (S^{-T} Y^T)^T
        y_eq = np.linalg.solve(suite.symbols.T, y.T).T
    except np.linalg.LinAlgError as e:
        raise RankDeficientError(f"pilot symbol matrix S_p is singular: {e}") from e
    return y_eq / suite.power_scale
