"""Seeded random streams.

Every run draws from a counter-based Philox generator, so a replica's
stream depends only on its seed and never on scheduling.
"""

import numpy as np


def make_rng(seed: int) -> np.random.Generator:
    """Random stream for one run"""
    if seed < 0:
        raise ValueError(f"Seed must be non-negative, got {seed}")
    return np.random.Generator(np.random.Philox(seed))


def derive_seed(master_seed: int, cell: int, replica: int) -> int:
    """Seed of replica `replica` in grid cell `cell`"""
    sequence = np.random.SeedSequence([master_seed, cell, replica])
    # 63 bits so seeds fit signed 64-bit result columns
    return int(sequence.generate_state(1, np.uint64)[0]) >> 1
