"""Seeded pseudo-random streams.

All randomized operations take an explicit generator, created here from a
64-bit seed and a stream index.  Two streams derived from the same seed are
statistically independent (PCG64 seeded through a SeedSequence spawn key),
and the same (seed, stream) pair always reproduces the same draw sequence.
"""
from __future__ import annotations

import numpy as np


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Generator for the given seed and stream index."""
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(stream),))
    return np.random.Generator(np.random.PCG64(ss))
