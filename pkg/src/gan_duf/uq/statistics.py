"""Empirical quantiles, summaries and the 1-D Wasserstein distance."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import ArrayLike
from scipy.stats import wasserstein_distance

from gan_duf.autodiff.tensor import Array
from gan_duf.config.constants import CONSTANTS
from gan_duf.errors import ConfigError, ValidationError


@dataclass(frozen=True)
class QuantileEstimate:
    """Lower order-statistic estimate of the ``tau``-quantile of ``values``."""

    tau: float
    value: float
    n_samples: int
    values: tuple[float, ...]


def _as_sample(values: ArrayLike, name: str) -> Array:
    sample = np.asarray(values, dtype=np.float64).reshape(-1)
    if sample.size == 0:
        raise ValidationError(f"{name} needs at least one value")
    return sample


def estimate_quantile(values: ArrayLike, tau: float = CONSTANTS.TAU) -> QuantileEstimate:
    """Sort ascending and take the element at ``ceil(tau * n) - 1`` (clamped).

    Raises:
        ValidationError: If ``values`` is empty.
        ConfigError: If ``tau`` is outside (0, 1).
    """
    if not 0.0 < tau < 1.0:
        raise ConfigError(f"tau must lie in (0, 1), got {tau}")
    sample = _as_sample(values, "estimate_quantile")
    ordered = np.sort(sample)
    index = min(max(math.ceil(tau * sample.size) - 1, 0), sample.size - 1)
    return QuantileEstimate(tau, float(ordered[index]), int(sample.size), tuple(sample.tolist()))


def wasserstein1(a: ArrayLike, b: ArrayLike) -> float:
    """Wasserstein-1 distance between the empirical distributions of ``a`` and ``b``."""
    left = _as_sample(a, "wasserstein1")
    right = _as_sample(b, "wasserstein1")
    return float(wasserstein_distance(left, right))


@dataclass(frozen=True)
class PerformanceSummary:
    """Mean, standard deviation and lower quantile of feasible objective values."""

    n_samples: int
    n_feasible: int
    mean: float
    std: float
    quantile: float
    tau: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "n_samples": self.n_samples,
            "n_feasible": self.n_feasible,
            "mean": self.mean,
            "std": self.std,
            "quantile": self.quantile,
            "tau": self.tau,
        }


def summarize(values: ArrayLike, tau: float = CONSTANTS.TAU) -> PerformanceSummary:
    """Summarize the finite entries of ``values``; all-NaN summaries when none are finite."""
    sample = np.asarray(values, dtype=np.float64).reshape(-1)
    feasible = sample[np.isfinite(sample)]
    if feasible.size == 0:
        nan = float("nan")
        return PerformanceSummary(int(sample.size), 0, nan, nan, nan, tau)
    return PerformanceSummary(
        int(sample.size),
        int(feasible.size),
        float(feasible.mean()),
        float(feasible.std()),
        estimate_quantile(feasible, tau).value,
        tau,
    )
