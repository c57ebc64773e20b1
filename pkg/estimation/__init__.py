"""
Estimation Module
Pilot beamformer design and sparse cascaded-channel estimation
"""

from .pilots import (
    Pair,
    PilotSuite,
    ris_pilot_vector,
    build_pilot_suite,
    pilot_observation,
    simulate_pilot_rx,
    equalize,
)
from .estimator import (
    EstimationResult,
    top_k_entries,
    rank_approx,
    select_pair,
    estimate_channel,
)

__all__ = [
    "Pair",
    "PilotSuite",
    "ris_pilot_vector",
    "build_pilot_suite",
    "pilot_observation",
    "simulate_pilot_rx",
    "equalize",
    "EstimationResult",
    "top_k_entries",
    "rank_approx",
    "select_pair",
    "estimate_channel",
]
