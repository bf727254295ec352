"""GAN-DUF - Design under manufacturing uncertainty with a hierarchical GAN."""

__version__ = "1.0.0"

from gan_duf.errors import GanDufError
from gan_duf.optimizer import RobustConfig, bayes_optimize
from gan_duf.uq import conditional_performance, estimate_quantile, wasserstein1

__all__ = [
    "GanDufError",
    "RobustConfig",
    "bayes_optimize",
    "conditional_performance",
    "estimate_quantile",
    "wasserstein1",
]
