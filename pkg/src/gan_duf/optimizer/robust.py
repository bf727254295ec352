"""Design objectives under fabrication uncertainty: nominal, quantile, mean-std, reliability."""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np
from numpy.typing import ArrayLike
from scipy.stats import norm

from gan_duf.autodiff.tensor import Array
from gan_duf.config.constants import CONSTANTS
from gan_duf.errors import ConfigError
from gan_duf.hgan.checkpoint import ModelCheckpoint
from gan_duf.objectives.base import INFEASIBLE, ObjectiveEvaluator, evaluate_many
from gan_duf.uq.sampling import nominal_design, sample_fabricated
from gan_duf.uq.statistics import estimate_quantile

logger = logging.getLogger(__name__)

MODES = ("nominal", "quantile", "mean_std", "reliability")


@dataclass(frozen=True)
class RobustConfig:
    """Which statistic of fabricated performance the optimizer maximizes.

    ``nominal`` scores the nominal design only. ``quantile`` takes the
    ``tau``-quantile of ``mc_samples`` generator fabrications, ``mean_std``
    takes ``mean - k * std``, and ``reliability`` the probability that the
    performance reaches ``c_star``, with ``alpha_star`` as the admissible
    failure probability.
    """

    mode: str = "quantile"
    tau: float = CONSTANTS.TAU
    k: float = 1.0
    mc_samples: int = CONSTANTS.AIRFOIL_MC_SAMPLES
    c_star: float | None = None
    alpha_star: float = 0.05
    draw_noise: bool = False
    common_random_numbers: bool = False

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ConfigError(f"unknown objective mode '{self.mode}' (known: {', '.join(MODES)})")
        if not 0.0 < self.tau < 1.0:
            raise ConfigError(f"tau must lie in (0, 1), got {self.tau}")
        if self.mode != "nominal" and self.mc_samples < 1:
            raise ConfigError(f"mc_samples must be >= 1, got {self.mc_samples}")
        if self.mode == "reliability":
            if self.c_star is None:
                raise ConfigError("reliability mode needs a performance threshold c_star")
            if not 0.0 <= self.alpha_star <= 1.0:
                raise ConfigError(f"alpha_star must lie in [0, 1], got {self.alpha_star}")

    @classmethod
    def for_kind(cls, kind: str, **overrides: Any) -> RobustConfig:
        samples = CONSTANTS.AIRFOIL_MC_SAMPLES
        if kind == "metasurface":
            samples = CONSTANTS.METASURFACE_MC_SAMPLES
        return cls(**{"mc_samples": samples, **overrides})

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> RobustConfig:
        return cls(**{k: data[k] for k in cls.__dataclass_fields__ if k in data})


@dataclass
class ObjectiveEstimate:
    """One objective evaluation of a parent code.

    ``values`` holds the per-sample performances behind the estimate (a single
    value in nominal mode). Reliability mode fills the failure fields.
    """

    objective: float
    values: Array
    failure_probability: float | None = None
    reliability_index: float | None = None
    feasible: bool = True
    extras: dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "objective": self.objective,
            "failure_probability": self.failure_probability,
            "reliability_index": self.reliability_index,
            "feasible": self.feasible,
        }


def reliability(values: ArrayLike, c_star: float) -> tuple[float, float]:
    """Empirical failure probability ``P(f < c_star)`` and index ``Phi^-1(1 - P_f)``.

    Infeasible samples count as failures.
    """
    sample = np.asarray(values, dtype=np.float64)
    failed = ~(sample >= c_star)
    p_fail = float(failed.mean())
    return p_fail, float(norm.ppf(1.0 - p_fail))


def statistic(values: Array, cfg: RobustConfig) -> ObjectiveEstimate:
    """Reduce fabricated performances to the configured statistic."""
    if cfg.mode == "reliability":
        assert cfg.c_star is not None
        p_fail, beta = reliability(values, cfg.c_star)
        return ObjectiveEstimate(
            1.0 - p_fail, values, p_fail, beta, feasible=p_fail <= cfg.alpha_star
        )
    feasible = values[np.isfinite(values)]
    if feasible.size == 0:
        logger.warning(f"All {values.size} fabricated evaluations are infeasible")
        return ObjectiveEstimate(INFEASIBLE, values, feasible=False)
    if feasible.size < values.size:
        logger.debug(f"{values.size - feasible.size} of {values.size} evaluations infeasible")
    if cfg.mode == "quantile":
        value = estimate_quantile(feasible, cfg.tau).value
    elif cfg.mode == "mean_std":
        value = float(feasible.mean() - cfg.k * feasible.std())
    else:
        value = float(feasible.mean())
    return ObjectiveEstimate(
        value, values, extras={"mean": float(feasible.mean()), "std": float(feasible.std())}
    )


def evaluate_design_objective(
    ckpt: ModelCheckpoint,
    parent: ArrayLike,
    evaluator: ObjectiveEvaluator,
    cfg: RobustConfig,
    rng: np.random.Generator,
    child: Array | None = None,
) -> ObjectiveEstimate:
    """Objective of parent code ``parent`` under ``cfg``.

    Args:
        ckpt: Trained model.
        parent: Parent code in [0, 1]^d.
        evaluator: Performance of one design (design space).
        cfg: Objective mode and Monte Carlo settings.
        rng: Source of child codes (and noise) for the Monte Carlo samples.
        child: Fixed child codes ``(mc_samples, child_dim)`` for common random numbers.
    """
    parent = np.asarray(parent, dtype=np.float64)
    if cfg.mode == "nominal":
        value = float(evaluator(nominal_design(ckpt, parent)))
        feasible = math.isfinite(value)
        return ObjectiveEstimate(
            value if feasible else INFEASIBLE, np.array([value]), feasible=feasible
        )
    designs = sample_fabricated(
        ckpt, parent, cfg.mc_samples, rng, draw_noise=cfg.draw_noise, child=child
    )
    return statistic(evaluate_many(evaluator, designs), cfg)
