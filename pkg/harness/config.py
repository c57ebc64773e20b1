"""
Experiment configuration
Flat ``key = value`` files validated into a pydantic model
"""

from pathlib import Path
from typing import Any, Dict, List, Literal, Mapping, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from channel.geometry import SystemGeometry, UpaGeometry
from channel.pathloss import BAND_PRESETS, BandPreset, get_band
from numerics.linalg import db_to_linear

DEFAULT_PTX_SWEEP_DBM = [20.0, 25.0, 30.0, 35.0, 40.0]


class ConfigFileError(ValueError):
    """A configuration file line could not be parsed"""


class ExperimentConfig(BaseModel):
    """
    Parameters of a Monte Carlo sweep over the transmit power constraint
    """
    model_config = ConfigDict(extra="forbid", frozen=True)

    band: Literal["mmwave28", "thz142"] = Field(default="mmwave28", description="Path loss preset")
    tx_array: Tuple[int, int] = Field(default=(8, 8), description="TX UPA size, horizontal x vertical")
    rx_array: Tuple[int, int] = Field(default=(8, 8), description="RX UPA size, horizontal x vertical")
    ris_array: Tuple[int, int] = Field(default=(16, 16), description="RIS size, horizontal x vertical")
    n_path_ts: int = Field(default=4, ge=1, description="Paths in the TX->RIS channel")
    n_path_sr: int = Field(default=4, ge=1, description="Paths in the RIS->RX channel")
    n_streams: int = Field(default=4, ge=1, description="Data and pilot streams N_s")
    n_rank: int = Field(default=1, ge=1, description="Rank of the channel estimate")
    k: Optional[int] = Field(default=None, ge=1, description="Entries sampled per pilot block (default n_streams)")
    d_ts_m: float = Field(default=35.0, gt=0.0, description="TX->RIS distance in meters")
    d_sr_m: float = Field(default=15.0, gt=0.0, description="RIS->RX distance in meters")
    noise_dbm: float = Field(default=-91.0, description="Noise power per receive antenna in dBm")
    ptx_dbm_sweep: List[float] = Field(
        default_factory=lambda: list(DEFAULT_PTX_SWEEP_DBM),
        min_length=1,
        description="Transmit power constraints to sweep, dBm",
    )
    trials: int = Field(default=10_000, ge=1, description="Channel realizations per sweep point")
    seed: int = Field(default=0, ge=0, lt=2**64, description="Root seed for every substream")
    shadowing: bool = Field(default=True, description="Draw log-normal shadowing per link")
    noiseless_pilots: bool = Field(default=False, description="Sound the channel without pilot noise")
    workers: int = Field(default=1, ge=1, description="Worker threads running trials")

    @field_validator("tx_array", "rx_array", "ris_array", mode="before")
    @classmethod
    def _parse_array(cls, value: Any) -> Any:
        if isinstance(value, str):
            geom = UpaGeometry.parse(value)
            return (geom.horiz, geom.vert)
        return value

    @field_validator("tx_array", "rx_array", "ris_array")
    @classmethod
    def _positive_array(cls, value: Tuple[int, int]) -> Tuple[int, int]:
        UpaGeometry(*value)
        return value

    @field_validator("ptx_dbm_sweep", mode="before")
    @classmethod
    def _parse_sweep(cls, value: Any) -> Any:
        if isinstance(value, str):
            return [item.strip() for item in value.split(",") if item.strip()]
        return value

    @model_validator(mode="after")
    def _check_dimensions(self) -> "ExperimentConfig":
        k = self.effective_k
        if not self.n_rank <= k <= self.n_streams:
            raise ValueError(
                f"need n_rank ({self.n_rank}) <= k ({k}) <= n_streams ({self.n_streams})"
            )
        if self.n_streams > min(self.n_path_ts, self.n_path_sr):
            raise ValueError(
                f"n_streams ({self.n_streams}) exceeds n_path_ts/n_path_sr "
                f"({self.n_path_ts}/{self.n_path_sr})"
            )
        geoms = self.geometry
        if self.n_streams > min(geoms.tx.n_elements, geoms.rx.n_elements):
            raise ValueError(f"n_streams ({self.n_streams}) exceeds the TX/RX antenna count")
        return self

    @property
    def effective_k(self) -> int:
        return self.n_streams if self.k is None else self.k

    @property
    def geometry(self) -> SystemGeometry:
        return SystemGeometry(
            tx=UpaGeometry(*self.tx_array),
            ris=UpaGeometry(*self.ris_array),
            rx=UpaGeometry(*self.rx_array),
        )

    @property
    def band_preset(self) -> BandPreset:
        return get_band(self.band)

    @property
    def noise_var_mw(self) -> float:
        return db_to_linear(self.noise_dbm)


def read_config_file(path: Union[str, Path]) -> Dict[str, str]:
    """
    Parse a flat ``key = value`` file

    Blank lines and everything after ``#`` are ignored.

    Args:
        path: Configuration file

    Returns:
        Raw string values keyed by field name
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigFileError(f"cannot read config file {path}: {e}") from e

    values: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigFileError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        values[key] = value.strip()
    return values


def load_config(
    path: Optional[Union[str, Path]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> ExperimentConfig:
    """
    Build a validated configuration

    Precedence is overrides, then file values, then model defaults.
    ``None`` overrides are ignored.
    """
    values: Dict[str, Any] = read_config_file(path) if path else {}
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    return ExperimentConfig.model_validate(values)


def valid_bands() -> List[str]:
    return sorted(BAND_PRESETS)
