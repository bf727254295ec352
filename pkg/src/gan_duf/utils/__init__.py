"""Utility modules for gan-duf."""

from gan_duf.utils.log import configure_logging
from gan_duf.utils.rng import derive_seed, derive_seeds, make_rng

__all__ = ["configure_logging", "derive_seed", "derive_seeds", "make_rng"]
