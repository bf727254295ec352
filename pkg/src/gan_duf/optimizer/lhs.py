"""Latin hypercube sampling on the unit cube."""

import numpy as np

from gan_duf.autodiff.tensor import Array
from gan_duf.errors import ConfigError
from gan_duf.utils.rng import make_rng


def lhs(n: int, d: int, rng: np.random.Generator | int | None = None) -> Array:
    """Draw ``n`` points in [0, 1]^d, one per stratum ``[k/n, (k+1)/n)`` in every dimension.

    Each column is an independent random permutation of the strata, jittered
    uniformly inside its stratum.

    Raises:
        ConfigError: If ``n`` or ``d`` is below 1.
    """
    if n < 1 or d < 1:
        raise ConfigError(f"lhs needs n >= 1 and d >= 1, got n={n}, d={d}")
    generator = make_rng(rng)
    points = np.empty((n, d))
    for j in range(d):
        points[:, j] = (generator.permutation(n) + generator.uniform(size=n)) / n
    return points
