"""
Uniform planar array geometry and steering vectors
"""

from dataclasses import dataclass

import numpy as np

from numerics.errors import SimulationError


@dataclass(frozen=True)
class UpaGeometry:
    """
    Uniform planar array of ``horiz x vert`` elements

    Elements are flattened as ``i_v * horiz + i_h`` everywhere in the
    library.
    """
    horiz: int
    vert: int
    spacing_over_lambda: float = 0.5

    def __post_init__(self):
        if self.horiz < 1 or self.vert < 1:
            raise SimulationError(f"UPA needs at least one element per axis, got {self.horiz}x{self.vert}")
        if self.spacing_over_lambda <= 0:
            raise SimulationError("element spacing d/lambda must be positive")

    @property
    def n_elements(self) -> int:
        return self.horiz * self.vert

    @classmethod
    def parse(cls, text: str) -> "UpaGeometry":
        """Build a geometry from an ``HxV`` string such as ``8x8``"""
        try:
            horiz, vert = (int(part) for part in text.lower().split("x"))
        except ValueError as e:
            raise SimulationError(f"array size must look like '8x8', got {text!r}") from e
        return cls(horiz, vert)

    def __str__(self) -> str:
        return f"{self.horiz}x{self.vert}"


@dataclass(frozen=True)
class SystemGeometry:
    """Arrays at the transmitter, the RIS and the receiver"""
    tx: UpaGeometry
    ris: UpaGeometry
    rx: UpaGeometry


def upa_response(geom: UpaGeometry, azimuth: float, elevation: float) -> np.ndarray:
    """
    Unit-norm UPA array response vector

    Args:
        geom: Array geometry
        azimuth: Azimuth angle in radians
        elevation: Elevation angle in radians

    Returns:
        Complex vector of length ``geom.n_elements``
    """
    i_h = np.arange(geom.horiz)
    i_v = np.arange(geom.vert)
    phase = 2.0 * np.pi * geom.spacing_over_lambda * (
        i_v[:, None] * np.cos(elevation)
        + i_h[None, :] * np.sin(azimuth) * np.sin(elevation)
    )
    return np.exp(1j * phase).ravel() / np.sqrt(geom.n_elements)


def upa_responses(geom: UpaGeometry, azimuths: np.ndarray, elevations: np.ndarray) -> np.ndarray:
    """Stack of steering vectors, one column per (azimuth, elevation) pair"""
    azimuths = np.atleast_1d(azimuths)
    elevations = np.atleast_1d(elevations)
    i_h = np.arange(geom.horiz)
    i_v = np.arange(geom.vert)
    # (vert, horiz, n) then flatten the first two axes in row-major order
    phase = 2.0 * np.pi * geom.spacing_over_lambda * (
        i_v[:, None, None] * np.cos(elevations)[None, None, :]
        + i_h[None, :, None] * (np.sin(azimuths) * np.sin(elevations))[None, None, :]
    )
    return np.exp(1j * phase).reshape(geom.n_elements, -1) / np.sqrt(geom.n_elements)
