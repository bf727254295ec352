"""Ground-truth assessment of an optimized parent code."""

from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass
from typing import Any

import numpy as np

from gan_duf.autodiff.tensor import Array
from gan_duf.config.constants import CONSTANTS
from gan_duf.dataset.arrayio import write_array
from gan_duf.dataset.store import fabricate
from gan_duf.errors import DegenerateGeometryError
from gan_duf.geometry.ffd import PerturbationConfig
from gan_duf.hgan.checkpoint import ModelCheckpoint
from gan_duf.objectives.base import ObjectiveEvaluator, evaluate_many
from gan_duf.optimizer.trace import BoTrace
from gan_duf.reports import PERFORMANCE_COLUMNS, write_csv
from gan_duf.uq.sampling import nominal_design, sample_fabricated
from gan_duf.uq.statistics import PerformanceSummary, summarize, wasserstein1
from gan_duf.utils.rng import derive_seed

logger = logging.getLogger(__name__)

SOLUTION_PERFORMANCE_NAME = "solution_performance.csv"
NOMINAL_DESIGN_NAME = "nominal_design.bin"
GENERATED_NAME = "generated_fabrications.bin"
GROUND_TRUTH_NAME = "ground_truth_fabrications.bin"

_GENERATED = 50
_GROUND_TRUTH = 51


@dataclass
class SolutionReport:
    """Nominal score and fabricated-performance statistics of one solution."""

    mode: str
    parent: list[float]
    nominal: float
    generated: PerformanceSummary
    ground_truth: PerformanceSummary
    wasserstein: float
    generated_values: Array
    ground_truth_values: Array

    def comparison_row(self) -> list[Any]:
        """Row of the comparison table (mode, nominal, quantile, mean, std, ground truth)."""
        return [
            self.mode,
            self.nominal,
            self.generated.quantile,
            self.generated.mean,
            self.generated.std,
            self.ground_truth.quantile,
        ]

    def to_dict(self) -> dict[str, Any]:
        return {
            "mode": self.mode,
            "parent": self.parent,
            "nominal": self.nominal,
            "generated": self.generated.to_dict(),
            "ground_truth": self.ground_truth.to_dict(),
            "wasserstein": self.wasserstein,
        }


def _ground_truth_designs(
    kind: str, nominal: Array, perturbation: PerturbationConfig, n: int, seed: int
) -> list[Array]:
    designs = []
    for j in range(n):
        try:
            design_seed = derive_seed(seed, _GROUND_TRUTH, j)
            designs.append(fabricate(kind, nominal, perturbation, design_seed))
        except DegenerateGeometryError:
            logger.warning("Solution nominal design is degenerate; no ground-truth fabrications")
            return []
    return designs


def evaluate_solution(
    ckpt: ModelCheckpoint,
    trace: BoTrace,
    evaluator: ObjectiveEvaluator,
    perturbation: PerturbationConfig,
    n_samples: int,
    tau: float = CONSTANTS.TAU,
    seed: int = 0,
    output_dir: str | None = None,
) -> SolutionReport:
    """Score the trace's solution nominally, on generator fabrications and on simulated ones.

    When ``output_dir`` is given the nominal design, both fabrication sets and
    their objective values (``solution_performance.csv``) are written there.
    """
    parent = np.asarray(trace.solution, dtype=np.float64)
    nominal = nominal_design(ckpt, parent)
    nominal_value = float(evaluator(nominal))

    rng = np.random.default_rng(derive_seed(seed, _GENERATED))
    draw_noise = bool(trace.config.get("draw_noise", False))
    generated = sample_fabricated(ckpt, parent, n_samples, rng, draw_noise=draw_noise)
    truth = _ground_truth_designs(ckpt.kind, nominal, perturbation, n_samples, seed)
    generated_values = evaluate_many(evaluator, generated)
    truth_values = evaluate_many(evaluator, truth) if truth else np.full(n_samples, -np.inf)

    a = generated_values[np.isfinite(generated_values)]
    b = truth_values[np.isfinite(truth_values)]
    report = SolutionReport(
        trace.mode,
        parent.tolist(),
        nominal_value,
        summarize(generated_values, tau),
        summarize(truth_values, tau),
        wasserstein1(a, b) if a.size and b.size else math.nan,
        generated_values,
        truth_values,
    )

    if output_dir is not None:
        os.makedirs(output_dir, exist_ok=True)
        write_array(os.path.join(output_dir, NOMINAL_DESIGN_NAME), nominal)
        write_array(os.path.join(output_dir, GENERATED_NAME), generated)
        if truth:
            write_array(os.path.join(output_dir, GROUND_TRUTH_NAME), np.stack(truth))
        rows = [["nominal", 0, nominal_value]]
        rows += [["generated", j, v] for j, v in enumerate(generated_values)]
        rows += [["ground_truth", j, v] for j, v in enumerate(truth_values)]
        write_csv(os.path.join(output_dir, SOLUTION_PERFORMANCE_NAME), PERFORMANCE_COLUMNS, rows)

    logger.info(
        f"Solution ({trace.mode}): nominal {nominal_value:.4g}, "
        f"generated q{tau:g} {report.generated.quantile:.4g}, "
        f"ground-truth q{tau:g} {report.ground_truth.quantile:.4g}"
    )
    return report
