"""
Channel Module
Multipath sampling, UPA responses, path loss and cascaded channels
"""

from .geometry import UpaGeometry, SystemGeometry, upa_response, upa_responses
from .pathloss import PathLossModel, BandPreset, BAND_PRESETS, get_band, path_loss_db
from .paths import LinkConfig, PathSet, sample_paths
from .matrices import assemble_channel, cascade, check_unit_modulus

__all__ = [
    "UpaGeometry",
    "SystemGeometry",
    "upa_response",
    "upa_responses",
    "PathLossModel",
    "BandPreset",
    "BAND_PRESETS",
    "get_band",
    "path_loss_db",
    "LinkConfig",
    "PathSet",
    "sample_paths",
    "assemble_channel",
    "cascade",
    "check_unit_modulus",
]
