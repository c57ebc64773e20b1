"""
Reference RIS configurations: random phases and the exhaustive path-pair oracle
"""

from typing import Dict, Mapping, Optional, Tuple

import numpy as np

from channel.matrices import cascade
from estimation.pilots import Pair, PilotSuite
from numerics.errors import SimulationError
from numerics.linalg import singular_values
from .design import capacity_from_singular_values


def random_ris(rng: np.random.Generator, m: int) -> np.ndarray:
    """``m`` reflection coefficients with i.i.d. uniform phases on [0, 2pi)"""
    if m < 1:
        raise SimulationError(f"RIS needs at least one element, got {m}")
    return np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, m))


def adjusted_channels(h_ts: np.ndarray, h_sr: np.ndarray, suite: PilotSuite) -> Dict[Pair, np.ndarray]:
    """True cascaded channel for every pilot phase vector"""
    return {pair: cascade(h_sr, suite.phase_vectors[pair], h_ts) for pair in suite.pairs}


def best_pair(capacities: Mapping[Pair, float]) -> Tuple[Pair, float]:
    """Argmax over pairs, ties to the lexicographically smallest pair"""
    if not capacities:
        raise SimulationError("no pair capacities to compare")
    chosen, best = None, -np.inf
    for pair in sorted(capacities):
        if capacities[pair] > best:
            chosen, best = pair, capacities[pair]
    return chosen, float(best)


def exhaustive_best_pair(
    h_ts: np.ndarray,
    h_sr: np.ndarray,
    suite: PilotSuite,
    n_streams: int,
    total_power: float,
    noise_var: float,
    pair_singular_values: Optional[Mapping[Pair, np.ndarray]] = None,
) -> Tuple[Pair, float]:
    """
    Path pair whose phase vector gives the highest true capacity

    Args:
        pair_singular_values: Singular values of every adjusted channel, when
            the caller already has them; the channels are not rebuilt then

    Returns:
        ((i_best, j_best), capacity)
    """
    if pair_singular_values is None:
        pair_singular_values = {
            pair: singular_values(h_tot) for pair, h_tot in adjusted_channels(h_ts, h_sr, suite).items()
        }
    capacities = {
        pair: capacity_from_singular_values(s, n_streams, total_power, noise_var)
        for pair, s in pair_singular_values.items()
    }
    return best_pair(capacities)
