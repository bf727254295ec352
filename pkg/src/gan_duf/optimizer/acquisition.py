"""Expected improvement and its maximization over the unit cube."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import ArrayLike
from scipy.optimize import minimize
from scipy.stats import norm

from gan_duf.autodiff.tensor import Array
from gan_duf.config.constants import CONSTANTS
from gan_duf.errors import ValidationError
from gan_duf.optimizer.gp import GpSurrogate

logger = logging.getLogger(__name__)


def expected_improvement(mean: ArrayLike, std: ArrayLike, best: float) -> Any:
    """EI for maximization: ``(m - best) Phi(u) + s phi(u)`` with ``u = (m - best) / s``.

    Where ``s`` is zero the value is ``max(m - best, 0)``. Scalars in give a float out.

    Raises:
        ValidationError: If any standard deviation is negative.
    """
    m = np.asarray(mean, dtype=np.float64)
    s = np.asarray(std, dtype=np.float64)
    if np.any(s < 0.0):
        raise ValidationError("expected improvement needs std >= 0")
    improvement = m - best
    positive = s > 0.0
    safe = np.where(positive, s, 1.0)
    u = improvement / safe
    ei = np.where(
        positive,
        improvement * norm.cdf(u) + s * norm.pdf(u),
        np.maximum(improvement, 0.0),
    )
    ei = np.maximum(ei, 0.0)
    return float(ei) if ei.ndim == 0 else ei


@dataclass(frozen=True)
class Proposal:
    point: Array
    value: float
    starts: int


def maximize_ei(
    gp: GpSurrogate,
    best: float,
    rng: np.random.Generator,
    restarts: int | None = None,
    incumbent: Array | None = None,
) -> Proposal:
    """Bounded L-BFGS-B on ``-EI`` from ``10 * d`` uniform starts plus the incumbent."""
    dim = gp.dim
    n_starts = CONSTANTS.ACQ_RESTARTS_PER_DIM * dim if restarts is None else restarts
    starts = rng.uniform(size=(n_starts, dim))
    if incumbent is not None:
        starts = np.vstack([starts, np.asarray(incumbent, dtype=np.float64)[None]])

    def negative_ei(x: Array) -> float:
        mean, std = gp.predict(x[None])
        return -float(expected_improvement(mean[0], std[0], best))

    best_point, best_value = starts[0], -np.inf
    for start in starts:
        result = minimize(negative_ei, start, method="L-BFGS-B", bounds=[(0.0, 1.0)] * dim)
        value = -float(result.fun)
        if value > best_value:
            best_point, best_value = np.clip(result.x, 0.0, 1.0), value
    logger.debug(f"EI maximum {best_value:.6g} from {len(starts)} starts")
    return Proposal(best_point, best_value, len(starts))
