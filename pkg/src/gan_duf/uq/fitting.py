"""Fitting test: recover the parent code whose nominal design best matches a target."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from gan_duf.autodiff import Tensor, backward, sub, sum_
from gan_duf.autodiff.tensor import Array
from gan_duf.config.constants import CONSTANTS
from gan_duf.errors import ConfigError, DimensionError
from gan_duf.hgan.checkpoint import ModelCheckpoint
from gan_duf.hgan.networks import design_shape
from gan_duf.utils.rng import make_rng

logger = logging.getLogger(__name__)


@dataclass
class FitResult:
    """Best parent code for ``target`` and its Euclidean fitting error (model space)."""

    target: Array
    parent: Array
    fitting_error: float
    restarts: int
    evaluations: int = 0
    restart_errors: list[float] = field(default_factory=list)


class _SquaredDistance:
    """``||G(c_p, 0, 0) - target||^2`` and its gradient in ``c_p``; remembers the best point."""

    def __init__(self, ckpt: ModelCheckpoint, target: Array):
        self.ckpt = ckpt
        self.target = Tensor(target[None])
        self.tail = np.zeros(ckpt.prior.child_dim + ckpt.prior.noise_dim)
        self.best_value = np.inf
        self.best_parent = np.full(ckpt.prior.parent_dim, 0.5)
        self.evaluations = 0

    def __call__(self, parent: Array) -> tuple[float, Array]:
        latent = Tensor(np.concatenate([parent, self.tail])[None], requires_grad=True)
        diff = sub(self.ckpt.generator(latent), self.target)
        loss = sum_(diff * diff)
        backward(loss)
        for p in self.ckpt.generator.parameters():
            p.grad = None
        assert latent.grad is not None
        value = float(loss.item())
        self.evaluations += 1
        if value < self.best_value:
            self.best_value = value
            self.best_parent = parent.copy()
        return value, latent.grad[0, : parent.size].copy()


def fit_nominal(
    ckpt: ModelCheckpoint,
    target: Array,
    restarts: int | None = None,
    rng: np.random.Generator | int | None = 0,
    max_iter: int = 200,
) -> FitResult:
    """Minimize ``||G(c_p, 0, 0) - target||`` over ``c_p`` in [0, 1]^d.

    Each restart runs bounded L-BFGS-B with reverse-mode gradients from a
    uniform start. Starts are drawn one at a time from ``rng``, so a run with
    more restarts and the same seed evaluates a superset of the starts.

    Args:
        ckpt: Trained model.
        target: Design in normalized (model) space.
        restarts: Number of starts; defaults to 3 x parent_dim.
        rng: Seed or generator for the starts.
        max_iter: Iteration cap per restart.
    """
    target = np.asarray(target, dtype=np.float64)
    if target.shape != design_shape(ckpt.kind):
        raise DimensionError("fit target", target.shape, design_shape(ckpt.kind))
    dim = ckpt.prior.parent_dim
    n_starts = CONSTANTS.FIT_RESTARTS_PER_DIM * dim if restarts is None else restarts
    if n_starts < 1:
        raise ConfigError(f"fit_nominal needs at least one restart, got {n_starts}")
    generator = make_rng(rng)
    objective = _SquaredDistance(ckpt, target)
    restart_errors = []

    for _ in range(n_starts):
        start = generator.uniform(0.0, 1.0, size=dim)
        result = minimize(
            objective,
            start,
            jac=True,
            method="L-BFGS-B",
            bounds=[(0.0, 1.0)] * dim,
            options={"maxiter": max_iter, "ftol": 1e-15, "gtol": 1e-10},
        )
        restart_errors.append(float(np.sqrt(max(result.fun, 0.0))))

    error = float(np.sqrt(max(objective.best_value, 0.0)))
    logger.debug(f"Fitting error {error:.6f} after {objective.evaluations} evaluations")
    return FitResult(
        target,
        objective.best_parent,
        error,
        n_starts,
        objective.evaluations,
        restart_errors,
    )
