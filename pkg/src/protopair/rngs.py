"""Named random streams derived from one user-facing seed.

Splitting and hashing must not share a stream: consuming random numbers
for one purpose would otherwise shift the other, breaking reproducibility
of saved models against re-run splits.
"""

import numpy as np

SPLIT_STREAM = 0
LSH_STREAM = 1


def stream_rng(seed: int, stream: int) -> np.random.Generator:
    """Generator for one named stream of ``seed``."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(stream,)))
