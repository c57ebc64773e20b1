"""
Sparse cascaded-channel estimator
Top-k sampling of equalized pilots, rank-limited reconstruction and pair selection
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike

from channel.geometry import SystemGeometry, upa_response
from channel.matrices import cascade
from channel.paths import PathSet
from numerics.errors import DimensionMismatchError, SimulationError
from numerics.linalg import as_matrix
from .pilots import Pair, PilotSuite, equalize, pilot_observation

logger = logging.getLogger(__name__)

Index = Tuple[int, int]


@dataclass(frozen=True)
class EstimationResult:
    """
    Outcome of one pilot round over every path pair

    Attributes:
        equalized: Equalized pilot block per pair
        topk: Top-k (row, col) indices per pair, strongest first
        h_est: Rank-limited estimate of the channel adjusted for the selected pair
        selected_pair: Pair whose strongest equalized entry is largest
        gain_estimates: Strongest equalized entry per pair
    """
    equalized: Dict[Pair, np.ndarray]
    topk: Dict[Pair, List[Index]]
    h_est: np.ndarray
    selected_pair: Pair
    gain_estimates: Dict[Pair, complex]


def top_k_entries(y_eq: ArrayLike, k: int) -> List[Index]:
    """
    Indices of the ``k`` largest-magnitude entries

    Ties go to the smaller row, then the smaller column.
    """
    y = as_matrix(y_eq, "equalized pilot block")
    if not 1 <= k <= y.shape[0]:
        raise SimulationError(f"k={k} must lie in [1, {y.shape[0]}]")
    rows, cols = np.divmod(np.arange(y.size), y.shape[1])
    order = np.lexsort((cols, rows, -np.abs(y).ravel()))[:k]
    return [(int(rows[n]), int(cols[n])) for n in order]


def rank_approx(
    y_eq: ArrayLike,
    indices: Sequence[Index],
    paths_ts: PathSet,
    paths_sr: PathSet,
    geoms: SystemGeometry,
    n_rank: int,
) -> np.ndarray:
    """
    Rank-``n_rank`` channel estimate from sampled equalized entries

    Entry (r, c) pairs RIS->RX receive path r with TX->RIS transmit path c.

    Returns:
        N_r x N_t matrix of rank at most n_rank
    """
    y = as_matrix(y_eq, "equalized pilot block")
    if not 1 <= n_rank <= len(indices):
        raise SimulationError(f"n_rank={n_rank} must lie in [1, {len(indices)}]")

    h_est = np.zeros((geoms.rx.n_elements, geoms.tx.n_elements), dtype=np.complex128)
    for r, c in indices[:n_rank]:
        if not (0 <= r < paths_sr.n_paths and 0 <= c < paths_ts.n_paths):
            raise SimulationError(
                f"index ({r}, {c}) outside path range "
                f"({paths_sr.n_paths} RIS->RX, {paths_ts.n_paths} TX->RIS)"
            )
        a_r = upa_response(geoms.rx, paths_sr.aoa_az[r], paths_sr.aoa_el[r])
        a_t = upa_response(geoms.tx, paths_ts.aod_az[c], paths_ts.aod_el[c])
        h_est += y[r, c] * np.outer(a_r, a_t.conj())
    return h_est


def select_pair(results: Mapping[Pair, ArrayLike]) -> Pair:
    """
    Pair with the largest peak equalized magnitude

    Ties go to the smaller i, then the smaller j.
    """
    if not results:
        raise SimulationError("pair selection needs at least one equalized block")
    best_pair, best_gain = None, -1.0
    for pair in sorted(results):
        gain = float(np.max(np.abs(results[pair])))
        if gain > best_gain:
            best_pair, best_gain = pair, gain
    return best_pair


def estimate_channel(
    h_ts: np.ndarray,
    h_sr: np.ndarray,
    paths_ts: PathSet,
    paths_sr: PathSet,
    suite: PilotSuite,
    geoms: SystemGeometry,
    noise_var: float,
    rng: np.random.Generator,
    k: Optional[int] = None,
    n_rank: int = 1,
    adjusted: Optional[Mapping[Pair, np.ndarray]] = None,
) -> EstimationResult:
    """
    Run the full pilot round and estimator

    Pairs are sounded in lexicographic order, each with a fresh noise
    block drawn from ``rng``.

    Args:
        h_ts: TX->RIS channel
        h_sr: RIS->RX channel
        paths_ts: TX->RIS paths (angles only are used)
        paths_sr: RIS->RX paths (angles only are used)
        suite: Pilot beamformers
        geoms: Array geometries
        noise_var: Noise power per receive antenna (mW)
        rng: Generator for pilot noise
        k: Entries sampled per block, defaults to N_s
        n_rank: Rank of the reconstructed channel
        adjusted: Precomputed ``H_SR diag(v) H_TS`` per pair, if available

    Returns:
        EstimationResult
    """
    k = suite.n_streams if k is None else k
    if not 1 <= n_rank <= k <= suite.n_streams:
        raise DimensionMismatchError(
            f"need 1 <= n_rank ({n_rank}) <= k ({k}) <= n_streams ({suite.n_streams})"
        )

    equalized: Dict[Pair, np.ndarray] = {}
    topk: Dict[Pair, List[Index]] = {}
    gain_estimates: Dict[Pair, complex] = {}
    for pair in suite.pairs:
        h_tot = adjusted[pair] if adjusted is not None else cascade(h_sr, suite.phase_vectors[pair], h_ts)
        y_eq = equalize(pilot_observation(h_tot, suite, noise_var, rng), suite)
        indices = top_k_entries(y_eq, k)
        equalized[pair] = y_eq
        topk[pair] = indices
        gain_estimates[pair] = complex(y_eq[indices[0]])

    selected = select_pair(equalized)
    h_est = rank_approx(equalized[selected], topk[selected], paths_ts, paths_sr, geoms, n_rank)
    logger.debug("selected pair %s, |gain| %.3e", selected, abs(gain_estimates[selected]))
    return EstimationResult(
        equalized=equalized,
        topk=topk,
        h_est=h_est,
        selected_pair=selected,
        gain_estimates=gain_estimates,
    )
