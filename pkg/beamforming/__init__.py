"""
Beamforming Module
Data-phase beamformer design, capacity evaluation and benchmark RIS settings
"""

from .design import (
    BeamformerSet,
    RateReport,
    optimal_beamformers,
    channel_capacity,
    capacity_from_singular_values,
    evaluate_rates,
)
from .benchmarks import random_ris, adjusted_channels, best_pair, exhaustive_best_pair

__all__ = [
    "BeamformerSet",
    "RateReport",
    "optimal_beamformers",
    "channel_capacity",
    "capacity_from_singular_values",
    "evaluate_rates",
    "random_ris",
    "adjusted_channels",
    "best_pair",
    "exhaustive_best_pair",
]
