"""
Deterministic random streams.

All randomness flows from a master seed through ``numpy.random.SeedSequence``
keyed by integer coordinates (cell, trial, retry, ...), so a stream depends
only on its coordinates and never on scheduling order.
"""

from typing import Union

import numpy as np

MAX_SEED = 2**64

SeedLike = Union[int, np.random.SeedSequence]


def validate_seed(seed: int) -> int:
    if not 0 <= seed < MAX_SEED:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def seed_sequence(master_seed: int, *keys: int) -> np.random.SeedSequence:
    """Seed sequence for the stream addressed by ``keys`` under ``master_seed``."""
    validate_seed(master_seed)
    return np.random.SeedSequence([master_seed, *keys])


def make_rng(master_seed: int, *keys: int) -> np.random.Generator:
    """Independent generator for the coordinates ``keys``."""
    return np.random.default_rng(seed_sequence(master_seed, *keys))


def networkx_seed(rng: np.random.Generator) -> int:
    """Integer seed for networkx generators drawn from ``rng``."""
    return int(rng.integers(0, 2**31))
