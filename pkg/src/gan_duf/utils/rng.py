"""Seed bookkeeping helpers.

Every random draw in the package comes from a ``numpy.random.Generator`` built
from an integer seed, so a manifest that stores those integers can replay the
draws exactly.
"""

import numpy as np


def make_rng(seed: int | np.random.Generator | None) -> np.random.Generator:
    """Return a generator for ``seed`` (a generator passes through unchanged)."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def derive_seed(seed: int, *key: int) -> int:
    """Derive a 32-bit seed for the stream identified by ``key`` under ``seed``."""
    sequence = np.random.SeedSequence([int(seed), *[int(k) for k in key]])
    return int(sequence.generate_state(1, dtype=np.uint32)[0])


def derive_seeds(seed: int, count: int, *key: int) -> list[int]:
    """Derive ``count`` independent seeds, the i-th one keyed by ``(*key, i)``."""
    return [derive_seed(seed, *key, i) for i in range(count)]
