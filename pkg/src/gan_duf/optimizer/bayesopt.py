"""Standard and robust Bayesian optimization over the parent latent space."""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Any

import numpy as np

from gan_duf.autodiff.tensor import Array
from gan_duf.config.constants import CONSTANTS
from gan_duf.errors import ConfigError
from gan_duf.hgan.checkpoint import ModelCheckpoint
from gan_duf.objectives.base import INFEASIBLE, ObjectiveEvaluator
from gan_duf.optimizer.acquisition import maximize_ei
from gan_duf.optimizer.gp import GpSurrogate
from gan_duf.optimizer.lhs import lhs
from gan_duf.optimizer.robust import ObjectiveEstimate, RobustConfig, evaluate_design_objective
from gan_duf.optimizer.trace import BoRecord, BoTrace
from gan_duf.uq.sampling import draw_child_codes
from gan_duf.utils.rng import derive_seed

logger = logging.getLogger(__name__)

# Stream keys for seed derivation
_INIT = 40
_OBJECTIVE = 41
_SURROGATE = 42
_ACQUISITION = 43
_SHARED_CHILD = 44


@dataclass(frozen=True)
class BoBudget:
    """Number of Latin-hypercube points and of sequentially selected points."""

    n_init: int
    n_seq: int

    def __post_init__(self) -> None:
        if self.n_init < 2:
            raise ConfigError(f"n_init must be >= 2, got {self.n_init}")
        if self.n_seq < 0:
            raise ConfigError(f"n_seq must be >= 0, got {self.n_seq}")

    @property
    def total(self) -> int:
        return self.n_init + self.n_seq

    @classmethod
    def for_kind(cls, kind: str) -> BoBudget:
        if kind == "metasurface":
            return cls(CONSTANTS.METASURFACE_BO_INIT, CONSTANTS.METASURFACE_BO_SEQ)
        return cls(CONSTANTS.AIRFOIL_BO_INIT, CONSTANTS.AIRFOIL_BO_SEQ)

    def to_dict(self) -> dict[str, int]:
        return {"n_init": self.n_init, "n_seq": self.n_seq}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> BoBudget:
        return cls(int(data["n_init"]), int(data["n_seq"]))


def surrogate_targets(objectives: Array) -> Array:
    """Replace infeasible objectives by the running minimum minus one prior std.

    With no feasible value at all every target is zero.
    """
    finite = np.isfinite(objectives)
    if not finite.any():
        return np.zeros_like(objectives)
    feasible = objectives[finite]
    spread = float(feasible.std()) if feasible.size > 1 else 0.0
    penalty = float(feasible.min()) - (spread if spread > 0.0 else 1.0)
    return np.where(finite, objectives, penalty)


def _timestamp() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


class _Loop:
    """Evaluation bookkeeping shared by the initial and the sequential phase."""

    def __init__(
        self,
        ckpt: ModelCheckpoint,
        evaluator: ObjectiveEvaluator,
        cfg: RobustConfig,
        seed: int,
        trace: BoTrace,
    ):
        self.ckpt = ckpt
        self.evaluator = evaluator
        self.cfg = cfg
        self.seed = seed
        self.trace = trace
        self.points: list[Array] = []
        self.objectives: list[float] = []
        self.best = -math.inf
        self.shared_child: Array | None = None
        if cfg.common_random_numbers and cfg.mode != "nominal":
            child_rng = np.random.default_rng(derive_seed(seed, _SHARED_CHILD))
            self.shared_child = draw_child_codes(ckpt, cfg.mc_samples, child_rng)
        self._start = time.perf_counter()

    def evaluate(self, parent: Array, phase: str, acquisition: float | None = None) -> None:
        index = len(self.points)
        rng = np.random.default_rng(derive_seed(self.seed, _OBJECTIVE, index))
        estimate: ObjectiveEstimate = evaluate_design_objective(
            self.ckpt, parent, self.evaluator, self.cfg, rng, child=self.shared_child
        )
        objective = estimate.objective if math.isfinite(estimate.objective) else INFEASIBLE
        feasible = estimate.feasible and math.isfinite(objective)
        if feasible and objective > self.best:
            self.best = objective
        self.points.append(np.asarray(parent, dtype=np.float64).copy())
        self.objectives.append(objective)
        self.trace.records.append(
            BoRecord(
                iteration=index,
                phase=phase,
                parent=[float(v) for v in parent],
                objective=objective,
                best_so_far=self.best,
                values=[float(v) for v in estimate.values],
                acquisition=acquisition,
                failure_probability=estimate.failure_probability,
                reliability_index=estimate.reliability_index,
                feasible=feasible,
                elapsed=time.perf_counter() - self._start,
            )
        )


def bayes_optimize(
    ckpt: ModelCheckpoint,
    evaluator: ObjectiveEvaluator,
    cfg: RobustConfig,
    budget: BoBudget,
    seed: int = 0,
    log_every: int = 10,
) -> BoTrace:
    """Maximize the configured objective over parent codes in [0, 1]^d.

    The run starts from ``budget.n_init`` Latin-hypercube points. Each
    sequential iteration refits the GP on every observation, warm-started
    from the previous hyperparameters. It then evaluates the point that
    maximizes expected improvement over the best observed target.

    Args:
        ckpt: Trained model whose generator maps parent codes to designs.
        evaluator: Performance of one design.
        cfg: Objective mode and Monte Carlo settings.
        budget: Initial and sequential evaluation counts.
        seed: Seed for every random stream of the run.
        log_every: Progress logging interval in iterations.

    Returns:
        The trace; its solution is the best feasible evaluated parent code.
    """
    dim = ckpt.prior.parent_dim
    trace = BoTrace(
        mode=cfg.mode,
        seed=seed,
        budget=budget.to_dict(),
        config=cfg.to_dict(),
        evaluator=evaluator.describe(),
        started_at=_timestamp(),
    )
    loop = _Loop(ckpt, evaluator, cfg, seed, trace)
    logger.info(
        f"Bayesian optimization ({cfg.mode}) over {dim} parent dims: "
        f"{budget.n_init} initial + {budget.n_seq} sequential evaluations"
    )

    for point in lhs(budget.n_init, dim, derive_seed(seed, _INIT)):
        loop.evaluate(point, "init")

    surrogate = GpSurrogate(rng=derive_seed(seed, _SURROGATE))
    for step in range(budget.n_seq):
        x = np.array(loop.points)
        y = surrogate_targets(np.array(loop.objectives))
        surrogate.fit(x, y)
        incumbent = x[int(np.argmax(y))]
        acq_rng = np.random.default_rng(derive_seed(seed, _ACQUISITION, step))
        proposal = maximize_ei(surrogate, float(y.max()), acq_rng, incumbent=incumbent)
        loop.evaluate(proposal.point, "bo", proposal.value)
        if log_every and (step + 1) % log_every == 0:
            logger.info(
                f"BO iteration {step + 1}/{budget.n_seq}: best {loop.best:.6g}, "
                f"EI {proposal.value:.3g}"
            )

    best = trace.best_record()
    if best is None:
        logger.warning("No feasible design found; the solution is marked infeasible")
        trace.solution = trace.records[0].parent
        trace.solution_objective = INFEASIBLE
    else:
        trace.solution = best.parent
        trace.solution_objective = best.objective
    trace.finished_at = _timestamp()
    logger.info(f"Optimization finished: best objective {trace.solution_objective:.6g}")
    return trace
