"""
Shared fixtures for the simulator tests
"""

from typing import Sequence

import numpy as np
import pytest

from channel.geometry import SystemGeometry, UpaGeometry
from channel.paths import PathSet


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def small_geoms():
    """4x4 TX and RX arrays around an 8x8 RIS"""
    return SystemGeometry(tx=UpaGeometry(4, 4), ris=UpaGeometry(8, 8), rx=UpaGeometry(4, 4))


@pytest.fixture
def make_paths():
    """
    Factory for hand-built path sets

    Path q gets elevation ``elevations[q]`` on every side; azimuths are
    spread so no two paths share a direction.
    """

    def _make(gains: Sequence[complex], elevations: Sequence[float]) -> PathSet:
        gains = np.asarray(gains, dtype=np.complex128)
        el = np.asarray(elevations, dtype=float)
        az = np.linspace(0.3, 2.5, gains.size)
        return PathSet(gains=gains, aoa_az=az, aoa_el=el, aod_az=az + 0.4, aod_el=el)

    return _make


def bisection_waterfill(s, noise_var, total_power, tol=1e-14):
    """Independent waterfilling reference: bisect on the water level"""
    floors = noise_var / np.asarray(s, dtype=float) ** 2
    lo, hi = 0.0, total_power + floors.min()
    while hi - lo > tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if np.maximum(mid - floors, 0.0).sum() > total_power:
            hi = mid
        else:
            lo = mid
    level = 0.5 * (lo + hi)
    return np.maximum(level - floors, 0.0), level


def crandn(rng: np.random.Generator, *shape: int) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
