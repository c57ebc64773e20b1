"""
Per-trial random substreams
Counter-based generators keyed by (seed, trial, purpose)
"""

from enum import IntEnum

import numpy as np


class Purpose(IntEnum):
    """What a substream is used for; part of the stream key"""
    TS_LINK = 0
    SR_LINK = 1
    PILOT_NOISE = 2
    RANDOM_RIS = 3


def substream(seed: int, trial: int, purpose: Purpose) -> np.random.Generator:
    """
    Independent generator for one trial and purpose

    The stream depends only on its key, so results do not change with
    execution order or thread count.
    """
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(trial, int(purpose)))
    return np.random.Generator(np.random.Philox(sequence))
