"""End-to-end experiment recipes: synth, train, study, optimize twice, plot.

Report directory layout::

    dataset/                 manifest.json and array files
    model/                   checkpoints and losses.csv of the main model
    study_models/p<P>_c<C>/  extra models of the dimension study
    study/study.csv          fitting errors and Wasserstein distances
    optimize_nominal/        trace and solution files of the standard run
    optimize_quantile/       trace and solution files of the robust run
    plots/*.svg
    comparison.csv           nominal and quantile scores of both solutions
    summary.json
"""

from __future__ import annotations

import json
import logging
import os
from collections.abc import Callable
from dataclasses import dataclass, field
from functools import partial
from typing import Any, TypeVar

import numpy as np

from gan_duf.config.constants import CONSTANTS
from gan_duf.config.presets import RecipePreset, get_preset
from gan_duf.dataset.store import DesignDataset, build_dataset, save_dataset
from gan_duf.errors import RecipeStageError
from gan_duf.geometry.ffd import PerturbationConfig
from gan_duf.hgan.checkpoint import ModelCheckpoint
from gan_duf.hgan.priors import PriorConfig
from gan_duf.hgan.trainer import TrainConfig, train
from gan_duf.objectives.base import ObjectiveEvaluator
from gan_duf.objectives.registry import make_evaluator
from gan_duf.optimizer.bayesopt import BoBudget, bayes_optimize
from gan_duf.optimizer.robust import RobustConfig
from gan_duf.optimizer.solution import SolutionReport, evaluate_solution
from gan_duf.optimizer.trace import BoTrace
from gan_duf.plotting import (
    plot_airfoils,
    plot_convergence,
    plot_field,
    plot_losses,
    plot_performance_histograms,
)
from gan_duf.reports import COMPARISON_COLUMNS, write_csv
from gan_duf.uq.sampling import nominal_design, sample_fabricated
from gan_duf.uq.study import StudyProtocol, StudyReport, parametric_study

logger = logging.getLogger(__name__)

RECIPE_NAMES = ("airfoil_small", "airfoil_paper", "metasurface_small", "metasurface_paper")
COMPARISON_NAME = "comparison.csv"
SUMMARY_NAME = "summary.json"

T = TypeVar("T")


@dataclass
class RecipeResult:
    """Where a recipe wrote its outputs and what it found."""

    name: str
    output_dir: str
    solutions: dict[str, SolutionReport] = field(default_factory=dict)
    study: StudyReport | None = None

    def summary(self) -> dict[str, Any]:
        return {
            "recipe": self.name,
            "output_dir": self.output_dir,
            "solutions": {mode: report.to_dict() for mode, report in self.solutions.items()},
            "study": self.study.summary() if self.study else {},
        }


def _stage(name: str, action: Callable[[], T]) -> T:
    logger.info(f"Recipe stage: {name}")
    try:
        return action()
    except Exception as e:
        raise RecipeStageError(name, e) from e


def _train_model(
    preset: RecipePreset,
    dataset: DesignDataset,
    parent_dim: int,
    child_dim: int,
    seed: int,
    output_dir: str,
) -> ModelCheckpoint:
    prior = PriorConfig(parent_dim, child_dim, preset.noise_dim)
    cfg = TrainConfig(
        steps=preset.steps,
        batch_size=preset.batch_size,
        lr_g=preset.learning_rate,
        lr_d=preset.learning_rate,
        lambda_info=preset.lambda_info,
        seed=seed,
        checkpoint_every=preset.checkpoint_every,
        log_every=preset.log_every,
    )
    return train(dataset, cfg, prior, output_dir=output_dir)


def _study_models(
    preset: RecipePreset,
    dataset: DesignDataset,
    main: ModelCheckpoint,
    seed: int,
    output_dir: str,
) -> tuple[dict[int, ModelCheckpoint], dict[int, ModelCheckpoint]]:
    """Models keyed by parent dim (fitting) and by child dim (Wasserstein)."""
    cache = {(preset.parent_dim, preset.child_dim): main}

    def model(parent_dim: int, child_dim: int) -> ModelCheckpoint:
        key = (parent_dim, child_dim)
        if key not in cache:
            directory = os.path.join(output_dir, "study_models", f"p{parent_dim}_c{child_dim}")
            cache[key] = _train_model(preset, dataset, parent_dim, child_dim, seed, directory)
        return cache[key]

    fitting: dict[int, ModelCheckpoint] = {}
    wasserstein: dict[int, ModelCheckpoint] = {}
    if "fitting" in preset.study_kinds:
        fitting = {p: model(p, preset.child_dim) for p in preset.study_parent_dims}
    if "wasserstein" in preset.study_kinds:
        wasserstein = {c: model(preset.parent_dim, c) for c in preset.study_child_dims}
    return fitting, wasserstein


def _optimize(
    preset: RecipePreset,
    ckpt: ModelCheckpoint,
    evaluator: ObjectiveEvaluator,
    perturbation: PerturbationConfig,
    mode: str,
    seed: int,
    output_dir: str,
) -> tuple[BoTrace, SolutionReport]:
    cfg = RobustConfig(mode=mode, tau=preset.tau, mc_samples=preset.mc_samples)
    trace = bayes_optimize(ckpt, evaluator, cfg, BoBudget(preset.bo_init, preset.bo_seq), seed)
    directory = os.path.join(output_dir, f"optimize_{mode}")
    trace.write(directory)
    report = evaluate_solution(
        ckpt,
        trace,
        evaluator,
        perturbation,
        CONSTANTS.GROUND_TRUTH_SAMPLES,
        preset.tau,
        seed,
        output_dir=directory,
    )
    return trace, report


def run_recipe(name: str, output_dir: str, seed: int = 0) -> RecipeResult:
    """Run the named recipe into ``output_dir``.

    Raises:
        ConfigError: If no recipe has that name.
        RecipeStageError: If a stage fails; names the stage and wraps the cause.
    """
    preset = get_preset(name)
    os.makedirs(output_dir, exist_ok=True)
    result = RecipeResult(name, os.path.abspath(output_dir))
    perturbation = PerturbationConfig(preset.noise_std, preset.filter_std, seed)
    evaluator = make_evaluator(preset.kind, n_f=preset.n_frequencies)
    logger.info(f"Running recipe {name} (seed {seed}) into {result.output_dir}")

    def synth() -> DesignDataset:
        dataset = build_dataset(
            preset.kind, preset.n_nominal, preset.m_fabricated, perturbation, log_every=100
        )
        save_dataset(dataset, os.path.join(output_dir, "dataset"))
        return dataset

    dataset = _stage("synth", synth)
    main = _stage(
        "train",
        lambda: _train_model(
            preset,
            dataset,
            preset.parent_dim,
            preset.child_dim,
            seed,
            os.path.join(output_dir, "model"),
        ),
    )

    def study() -> StudyReport:
        fitting, wasserstein = _study_models(preset, dataset, main, seed, output_dir)
        protocol = StudyProtocol(
            preset.study_targets,
            preset.study_fabrications,
            preset.study_nominals,
            kinds=preset.study_kinds,
            seed=seed,
        )
        report = parametric_study(fitting, wasserstein, dataset, evaluator, protocol, perturbation)
        report.write_csv(os.path.join(output_dir, "study", "study.csv"))
        return report

    os.makedirs(os.path.join(output_dir, "study"), exist_ok=True)
    result.study = _stage("study", study)

    traces: dict[str, BoTrace] = {}
    for mode in ("nominal", "quantile"):
        trace, report = _stage(
            f"optimize_{mode}",
            partial(_optimize, preset, main, evaluator, perturbation, mode, seed, output_dir),
        )
        traces[mode] = trace
        result.solutions[mode] = report

    def plot() -> None:
        plots = os.path.join(output_dir, "plots")
        plot_performance_histograms(
            {f"{m} solution": r.ground_truth_values for m, r in result.solutions.items()},
            os.path.join(plots, "ground_truth_performance.svg"),
            preset.tau,
        )
        plot_performance_histograms(
            {f"{m} solution": r.generated_values for m, r in result.solutions.items()},
            os.path.join(plots, "generated_performance.svg"),
            preset.tau,
            title="Performance of generated fabrications",
        )
        plot_convergence(traces, os.path.join(plots, "convergence.svg"))
        plot_losses(main.loss_history, os.path.join(plots, "losses.svg"))
        for mode, report in result.solutions.items():
            nominal = nominal_design(main, report.parent)
            path = os.path.join(plots, f"{mode}_design.svg")
            if preset.kind == "airfoil":
                rng = np.random.default_rng(seed)
                plot_airfoils(nominal, sample_fabricated(main, report.parent, 10, rng), path)
            else:
                plot_field(nominal, path)

    _stage("plot", plot)

    rows = [report.comparison_row() for report in result.solutions.values()]
    write_csv(os.path.join(output_dir, COMPARISON_NAME), COMPARISON_COLUMNS, rows)
    with open(os.path.join(output_dir, SUMMARY_NAME), "w", encoding="utf-8") as f:
        json.dump(result.summary(), f, indent=2, sort_keys=True, default=str)
    logger.info(f"Recipe {name} finished")
    return result
