"""Gaussian-process surrogate with a squared-exponential ARD kernel."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any

import numpy as np
from scipy.linalg import LinAlgError, cho_solve, cholesky, solve_triangular
from scipy.optimize import minimize
from scipy.spatial.distance import cdist

from gan_duf.autodiff.tensor import Array
from gan_duf.errors import DimensionError, SurrogateError, ValidationError
from gan_duf.utils.rng import make_rng

logger = logging.getLogger(__name__)

JITTERS = (0.0, 1e-10, 1e-9, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4)
LOG_SIGNAL_BOUNDS = (math.log(1e-2), math.log(1e2))
LOG_LENGTH_BOUNDS = (math.log(1e-2), math.log(1e2))
DEFAULT_NOISE_VAR = 1e-8
DEFAULT_LENGTH_SCALE = 0.3
DEFAULT_FIT_RESTARTS = 3


@dataclass(frozen=True)
class KernelParams:
    """Signal variance, per-dimension length scales and noise variance.

    Values refer to standardized targets when the surrogate normalizes ``y``.
    """

    signal_var: float
    length_scales: tuple[float, ...]
    noise_var: float = DEFAULT_NOISE_VAR

    def __post_init__(self) -> None:
        if self.signal_var <= 0.0 or self.noise_var < 0.0:
            raise ValidationError(
                f"kernel needs signal_var > 0 and noise_var >= 0, "
                f"got {self.signal_var} and {self.noise_var}"
            )
        if not self.length_scales or min(self.length_scales) <= 0.0:
            raise ValidationError(f"length scales must be positive, got {self.length_scales}")

    @property
    def dim(self) -> int:
        return len(self.length_scales)

    @classmethod
    def default(cls, dim: int, noise_var: float = DEFAULT_NOISE_VAR) -> KernelParams:
        return cls(1.0, (DEFAULT_LENGTH_SCALE,) * dim, noise_var)

    def theta(self) -> Array:
        """Log signal variance followed by log length scales."""
        return np.log(np.array([self.signal_var, *self.length_scales]))

    @classmethod
    def from_theta(cls, theta: Array, noise_var: float) -> KernelParams:
        values = np.exp(np.asarray(theta, dtype=np.float64))
        return cls(float(values[0]), tuple(float(v) for v in values[1:]), noise_var)

    def to_dict(self) -> dict[str, Any]:
        return {
            "signal_var": self.signal_var,
            "length_scales": list(self.length_scales),
            "noise_var": self.noise_var,
        }


def se_kernel(a: Array, b: Array, params: KernelParams) -> Array:
    """``s^2 exp(-0.5 * sum_d ((a_d - b_d) / l_d)^2)`` for all row pairs."""
    scale = np.asarray(params.length_scales)
    return params.signal_var * np.exp(-0.5 * cdist(a / scale, b / scale, "sqeuclidean"))


def factorize(kernel: Array, noise_var: float, warn: bool = True) -> tuple[Array, float]:
    """Lower Cholesky factor of ``kernel + (noise_var + jitter) I``, escalating the jitter.

    Returns:
        The factor and the jitter that was needed.

    Raises:
        SurrogateError: If the matrix is not positive definite even at the largest jitter.
    """
    eye = np.eye(kernel.shape[0])
    for jitter in JITTERS:
        try:
            chol = cholesky(kernel + (noise_var + jitter) * eye, lower=True)
        except LinAlgError:
            continue
        if jitter > 0.0 and warn:
            logger.warning(f"Kernel matrix needed jitter {jitter:g} to factorize")
        return chol, jitter
    raise SurrogateError(
        f"kernel matrix of {kernel.shape[0]} points is not positive definite "
        f"after jitter {JITTERS[-1]:g}"
    )


def negative_log_marginal_likelihood(
    theta: Array, x: Array, z: Array, noise_var: float
) -> tuple[float, Array]:
    """Negative log marginal likelihood of ``z`` and its gradient in ``theta``."""
    params = KernelParams.from_theta(theta, noise_var)
    kf = se_kernel(x, x, params)
    try:
        chol, _ = factorize(kf, noise_var, warn=False)
    except SurrogateError:
        return 1e25, np.zeros_like(theta)
    n = z.size
    alpha = cho_solve((chol, True), z)
    lml = -0.5 * float(z @ alpha) - float(np.log(np.diag(chol)).sum()) - 0.5 * n * math.log(
        2.0 * math.pi
    )
    inner = np.outer(alpha, alpha) - cho_solve((chol, True), np.eye(n))
    grad = np.empty(theta.size)
    grad[0] = 0.5 * float(np.sum(inner * kf))
    for j, scale in enumerate(params.length_scales):
        diff2 = (x[:, j, None] - x[None, :, j]) ** 2 / scale**2
        grad[j + 1] = 0.5 * float(np.sum(inner * kf * diff2))
    return -lml, -grad


class GpSurrogate:
    """Zero-mean GP on standardized targets.

    Hyperparameters are refit on every :meth:`fit` by bounded multi-start
    L-BFGS-B on the log marginal likelihood. The previous hyperparameters
    are always one of the starts.
    """

    def __init__(
        self,
        params: KernelParams | None = None,
        optimize: bool = True,
        restarts: int = DEFAULT_FIT_RESTARTS,
        normalize_y: bool = True,
        noise_var: float = DEFAULT_NOISE_VAR,
        rng: np.random.Generator | int | None = 0,
    ):
        self.params = params
        self.optimize = optimize
        self.restarts = restarts
        self.normalize_y = normalize_y
        self.noise_var = params.noise_var if params is not None else noise_var
        self._rng = make_rng(rng)
        self._x: Array | None = None
        self._chol: Array | None = None
        self._alpha: Array | None = None
        self.y_mean = 0.0
        self.y_std = 1.0
        self.jitter = 0.0

    @property
    def is_fitted(self) -> bool:
        return self._alpha is not None

    @property
    def dim(self) -> int:
        if self._x is None:
            raise SurrogateError("surrogate has not been fitted")
        return int(self._x.shape[1])

    @property
    def n_observations(self) -> int:
        return 0 if self._x is None else int(self._x.shape[0])

    @property
    def prior_mean(self) -> float:
        return self.y_mean

    @property
    def prior_std(self) -> float:
        assert self.params is not None
        return self.y_std * math.sqrt(self.params.signal_var)

    def fit(self, x: Array, y: Array) -> GpSurrogate:
        """Condition on observations ``(x, y)``; ``x`` has shape ``(n, d)``."""
        x = np.atleast_2d(np.asarray(x, dtype=np.float64))
        y = np.asarray(y, dtype=np.float64).reshape(-1)
        if y.size == 0:
            raise ValidationError("GP fit needs at least one observation")
        if x.shape[0] != y.size:
            raise DimensionError("GP fit", x.shape, y.shape)
        if not np.all(np.isfinite(y)):
            raise ValidationError("GP targets must be finite")

        if self.normalize_y:
            std = float(y.std())
            self.y_mean = float(y.mean())
            self.y_std = std if std > 0.0 else 1.0
        z = (y - self.y_mean) / self.y_std

        dim = x.shape[1]
        params = self.params
        if params is None or params.dim != dim:
            params = KernelParams.default(dim, self.noise_var)
        if self.optimize:
            params = self._maximize_lml(x, z, params)
        self.params = params

        chol, self.jitter = factorize(se_kernel(x, x, params), params.noise_var)
        self._x, self._chol = x, chol
        self._alpha = cho_solve((chol, True), z)
        return self

    def _maximize_lml(self, x: Array, z: Array, warm: KernelParams) -> KernelParams:
        dim = x.shape[1]
        bounds = [LOG_SIGNAL_BOUNDS] + [LOG_LENGTH_BOUNDS] * dim
        lows = np.array([b[0] for b in bounds])
        highs = np.array([b[1] for b in bounds])
        starts = [np.clip(warm.theta(), lows, highs), KernelParams.default(dim).theta()]
        starts += [self._rng.uniform(lows, highs) for _ in range(self.restarts)]

        best_theta, best_value = starts[0], math.inf
        for start in starts:
            result = minimize(
                negative_log_marginal_likelihood,
                start,
                args=(x, z, warm.noise_var),
                jac=True,
                method="L-BFGS-B",
                bounds=bounds,
            )
            if np.isfinite(result.fun) and result.fun < best_value:
                best_theta, best_value = result.x, float(result.fun)
        fitted = KernelParams.from_theta(best_theta, warm.noise_var)
        logger.debug(f"GP hyperparameters {fitted.to_dict()} (-lml {best_value:.4f})")
        return fitted

    def predict(self, query: Array) -> tuple[Array, Array]:
        """Posterior mean and standard deviation (noise-free latent) at ``query`` rows."""
        if self._x is None or self._chol is None or self._alpha is None or self.params is None:
            raise SurrogateError("surrogate has not been fitted")
        q = np.atleast_2d(np.asarray(query, dtype=np.float64))
        if q.shape[1] != self._x.shape[1]:
            raise DimensionError("GP predict", q.shape, self._x.shape)
        ks = se_kernel(q, self._x, self.params)
        mean = ks @ self._alpha
        v = solve_triangular(self._chol, ks.T, lower=True)
        var = np.maximum(self.params.signal_var - np.sum(v * v, axis=0), 0.0)
        return self.y_mean + self.y_std * mean, self.y_std * np.sqrt(var)
