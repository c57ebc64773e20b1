"""
Distance-dependent path loss with log-normal shadowing
Band presets for 28 GHz mmWave and 142 GHz THz links
"""

from dataclasses import dataclass
from typing import Dict

import numpy as np

from numerics.errors import SimulationError


@dataclass(frozen=True)
class PathLossModel:
    """``PL(d) [dB] = alpha_db + 10 * beta * log10(d) + xi``, xi ~ N(0, shadow_sigma_db^2)"""
    alpha_db: float
    beta: float
    shadow_sigma_db: float

    def __post_init__(self):
        if self.beta <= 0:
            raise SimulationError("path loss exponent beta must be positive")
        if self.shadow_sigma_db < 0:
            raise SimulationError("shadowing sigma must be non-negative")


@dataclass(frozen=True)
class BandPreset:
    """LOS and NLOS path loss models of one carrier band"""
    name: str
    los: PathLossModel
    nlos: PathLossModel


BAND_PRESETS: Dict[str, BandPreset] = {
    "mmwave28": BandPreset(
        name="mmwave28",
        los=PathLossModel(alpha_db=61.4, beta=2.0, shadow_sigma_db=5.8),
        nlos=PathLossModel(alpha_db=72.0, beta=2.92, shadow_sigma_db=8.7),
    ),
    "thz142": BandPreset(
        name="thz142",
        los=PathLossModel(alpha_db=75.44, beta=2.1, shadow_sigma_db=2.8),
        nlos=PathLossModel(alpha_db=75.44, beta=3.1, shadow_sigma_db=8.3),
    ),
}


def get_band(name: str) -> BandPreset:
    """Look up a band preset by its string key"""
    try:
        return BAND_PRESETS[name]
    except KeyError:
        valid = ", ".join(sorted(BAND_PRESETS))
        raise SimulationError(f"unknown band {name!r}, valid bands: {valid}") from None


def path_loss_db(model: PathLossModel, distance_m: float, shadow_draw: float = 0.0) -> float:
    """
    Path loss in dB

    Args:
        model: Path loss parameters
        distance_m: Link distance in meters
        shadow_draw: Sample of the shadowing term in dB (0 disables it)

    Returns:
        Path loss in dB
    """
    if distance_m <= 0:
        raise SimulationError(f"distance must be positive, got {distance_m}")
    return float(model.alpha_db + 10.0 * model.beta * np.log10(distance_m) + shadow_draw)
