from enum import IntEnum

import numpy as np

# Recorded in every meta.cfg so a run can be replayed on another platform
RNG_ALGORITHM = "numpy.PCG64/SeedSequence"


class Stream(IntEnum):
    """Independent random streams derived from one experiment seed."""

    MAGNITUDES = 0
    INITIAL_PHASES = 1
    HETEROGENEITY = 2


def make_rng(seed: int, stream: Stream) -> np.random.Generator:
    """
    Return the generator for one named stream of `seed`.

    Streams are children of `SeedSequence(seed)`, so adding draws to one
    stream never shifts the values of another.
    """
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(int(stream),))
    return np.random.Generator(np.random.PCG64(sequence))
