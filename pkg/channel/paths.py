"""
Saleh-Valenzuela multipath parameter sampling
"""

import logging
from dataclasses import dataclass

import numpy as np

from numerics.errors import SimulationError
from .geometry import UpaGeometry, upa_responses
from .pathloss import PathLossModel, path_loss_db

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinkConfig:
    """
    One propagation link (TX->RIS or RIS->RX)

    Path 0 uses ``los_model`` before sorting, every other path uses
    ``nlos_model``.
    """
    n_path: int
    distance_m: float
    los_model: PathLossModel
    nlos_model: PathLossModel
    rx_geometry: UpaGeometry
    tx_geometry: UpaGeometry
    shadowing: bool = True

    def __post_init__(self):
        if self.n_path < 1:
            raise SimulationError(f"a link needs at least one path, got n_path={self.n_path}")
        if self.distance_m <= 0:
            raise SimulationError(f"link distance must be positive, got {self.distance_m}")

    @property
    def normalization_sq(self) -> float:
        """gamma^2 = rows * cols / n_path"""
        return self.rx_geometry.n_elements * self.tx_geometry.n_elements / self.n_path


@dataclass(frozen=True)
class PathSet:
    """
    Complex gains and angles of one link, strongest path first

    Angles are radians; azimuths lie in [0, 2pi), elevations in [0, pi).
    """
    gains: np.ndarray
    aoa_az: np.ndarray
    aoa_el: np.ndarray
    aod_az: np.ndarray
    aod_el: np.ndarray

    @property
    def n_paths(self) -> int:
        return int(self.gains.size)

    def receive_responses(self, geom: UpaGeometry) -> np.ndarray:
        """Receive steering vectors as columns, path order"""
        return upa_responses(geom, self.aoa_az, self.aoa_el)

    def transmit_responses(self, geom: UpaGeometry) -> np.ndarray:
        """Transmit steering vectors as columns, path order"""
        return upa_responses(geom, self.aod_az, self.aod_el)


def sample_paths(rng: np.random.Generator, link: LinkConfig) -> PathSet:
    """
    Draw one multipath realization of a link

    Shadowing uses a single standard-normal draw per link, scaled by the
    LOS and NLOS sigma respectively.

    Args:
        rng: Generator owned by the caller
        link: Link parameters

    Returns:
        PathSet sorted by descending gain magnitude
    """
    n = link.n_path
    z = rng.standard_normal() if link.shadowing else 0.0
    pl_los = path_loss_db(link.los_model, link.distance_m, z * link.los_model.shadow_sigma_db)
    pl_nlos = path_loss_db(link.nlos_model, link.distance_m, z * link.nlos_model.shadow_sigma_db)

    variances = np.full(n, link.normalization_sq * 10.0 ** (-0.1 * pl_nlos))
    variances[0] = link.normalization_sq * 10.0 ** (-0.1 * pl_los)

    gains = np.sqrt(variances / 2.0) * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
    aoa_az = rng.uniform(0.0, 2.0 * np.pi, n)
    aoa_el = rng.uniform(0.0, np.pi, n)
    aod_az = rng.uniform(0.0, 2.0 * np.pi, n)
    aod_el = rng.uniform(0.0, np.pi, n)

    order = np.argsort(-np.abs(gains), kind="stable")
    logger.debug("sampled %d paths, PL LOS %.2f dB, NLOS %.2f dB", n, pl_los, pl_nlos)
    return PathSet(
        gains=gains[order],
        aoa_az=aoa_az[order],
        aoa_el=aoa_el[order],
        aod_az=aod_az[order],
        aod_el=aod_el[order],
    )
