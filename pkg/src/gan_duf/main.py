"""Main entry point for the GAN-DUF command-line interface."""

import argparse
import json
import logging
import os
import sys
from collections.abc import Callable, Sequence
from typing import Any

import numpy as np

from gan_duf.autodiff.tensor import Array
from gan_duf.config.config_file import load_config_file, merge_config
from gan_duf.config.constants import COLORS, CONSTANTS
from gan_duf.config.settings import RunConfig, prepare_output_dir
from gan_duf.dataset.sources import DESIGN_KINDS
from gan_duf.dataset.store import build_dataset, load_dataset, save_dataset
from gan_duf.errors import ConfigError, DimensionError, GanDufError, ValidationError
from gan_duf.geometry.ffd import PerturbationConfig
from gan_duf.hgan.checkpoint import ModelCheckpoint, load_checkpoint
from gan_duf.hgan.priors import PriorConfig
from gan_duf.hgan.trainer import TrainConfig, train
from gan_duf.objectives.base import ObjectiveEvaluator
from gan_duf.objectives.fixtures import verify_fixtures
from gan_duf.objectives.registry import make_evaluator
from gan_duf.optimizer.bayesopt import BoBudget, bayes_optimize
from gan_duf.optimizer.robust import MODES, RobustConfig
from gan_duf.optimizer.solution import SOLUTION_PERFORMANCE_NAME, evaluate_solution
from gan_duf.optimizer.trace import BoTrace
from gan_duf.plotting import plot_convergence, plot_losses, plot_performance_histograms
from gan_duf.recipes import RECIPE_NAMES, run_recipe
from gan_duf.reports import PERFORMANCE_COLUMNS, read_csv, write_csv
from gan_duf.uq.study import STUDY_KINDS, StudyProtocol, conditional_performance, parametric_study
from gan_duf.utils.log import configure_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3

THREAD_VARIABLES = ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS")


def _add_common(parser: argparse.ArgumentParser, output_required: bool = True) -> None:
    """Flags shared by every subcommand."""
    parser.add_argument(
        "--output",
        "-o",
        required=output_required,
        default=None,
        help="Output directory (must be empty unless --force is given)",
    )
    parser.add_argument(
        "--force", action="store_true", help="Allow writing into a non-empty output directory"
    )
    parser.add_argument("--config", default=None, help="JSON file with parameter values")
    parser.add_argument(
        "--threads", type=int, default=1, help="Cap on worker threads and processes (default: 1)"
    )
    parser.add_argument("--seed", type=int, default=None, help="Root random seed (default: 0)")
    parser.add_argument("--verbose", "-v", action="store_true", help="Log at DEBUG level")


def _add_perturbation(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--noise-std", type=float, default=None, help="Fabrication noise (default: per kind)"
    )
    parser.add_argument(
        "--filter-std", type=float, default=None, help="Smoothing width in pixels (metasurface)"
    )


def _add_evaluator(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--evaluator-command",
        default=None,
        help="External solver command; the design file path is appended as last argument",
    )
    parser.add_argument(
        "--n-f", type=int, default=None, help="Frequencies in the metasurface band (default: 11)"
    )


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one subparser per command."""
    parser = argparse.ArgumentParser(
        prog="gan-duf",
        description="Design under manufacturing uncertainty with a hierarchical GAN.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    synth = sub.add_parser("synth", help="Generate a paired nominal/fabricated dataset")
    synth.add_argument("--kind", choices=DESIGN_KINDS, default=None, help="Design kind")
    synth.add_argument("--n", type=int, default=None, help="Number of nominal designs")
    synth.add_argument("--m", type=int, default=None, help="Fabrications per nominal design")
    synth.add_argument("--source-dir", default=None, help="Directory of airfoil coordinate files")
    _add_perturbation(synth)
    _add_common(synth)

    train_cmd = sub.add_parser("train", help="Train the hierarchical GAN on a dataset")
    train_cmd.add_argument("--data", required=True, help="Dataset directory")
    train_cmd.add_argument("--parent-dim", type=int, default=None)
    train_cmd.add_argument("--child-dim", type=int, default=None)
    train_cmd.add_argument("--noise-dim", type=int, default=None)
    train_cmd.add_argument("--steps", type=int, default=None)
    train_cmd.add_argument("--batch-size", type=int, default=None)
    train_cmd.add_argument("--lr", type=float, default=None, help="Adam learning rate")
    train_cmd.add_argument("--lambda-info", type=float, default=None)
    train_cmd.add_argument("--checkpoint-every", type=int, default=None)
    train_cmd.add_argument("--log-every", type=int, default=None)
    _add_common(train_cmd)

    uq = sub.add_parser("uq", help="Performance distribution of one parent code")
    uq.add_argument("--checkpoint", required=True, help="Checkpoint header path")
    uq.add_argument("--parent", default=None, help="Comma-separated parent code (default: 0.5s)")
    uq.add_argument("--n", type=int, default=None, help="Fabrications per source")
    uq.add_argument("--tau", type=float, default=None)
    uq.add_argument("--data", default=None, help="Dataset whose perturbation settings to use")
    uq.add_argument("--draw-noise", action="store_true", default=None)
    _add_perturbation(uq)
    _add_evaluator(uq)
    _add_common(uq)

    optimize = sub.add_parser("optimize", help="Bayesian optimization over parent codes")
    optimize.add_argument("--checkpoint", required=True, help="Checkpoint header path")
    optimize.add_argument("--mode", choices=MODES, default=None)
    optimize.add_argument("--tau", type=float, default=None)
    optimize.add_argument("--k", type=float, default=None, help="Std weight of mean_std mode")
    optimize.add_argument("--mc-samples", type=int, default=None)
    optimize.add_argument("--c-star", type=float, default=None, help="Reliability threshold")
    optimize.add_argument("--alpha-star", type=float, default=None)
    optimize.add_argument("--n-init", type=int, default=None)
    optimize.add_argument("--n-seq", type=int, default=None)
    optimize.add_argument(
        "--crn", action="store_true", default=None, help="Common random numbers across designs"
    )
    optimize.add_argument("--draw-noise", action="store_true", default=None)
    optimize.add_argument("--ground-truth-samples", type=int, default=None)
    optimize.add_argument("--data", default=None, help="Dataset whose perturbation settings to use")
    _add_perturbation(optimize)
    _add_evaluator(optimize)
    _add_common(optimize)

    study = sub.add_parser("study", help="Parametric fitting and Wasserstein studies")
    study.add_argument("--data", required=True, help="Dataset directory")
    study.add_argument("--fitting-models", nargs="*", default=None, help="Checkpoint paths")
    study.add_argument("--wasserstein-models", nargs="*", default=None, help="Checkpoint paths")
    study.add_argument("--kinds", nargs="+", choices=STUDY_KINDS, default=None)
    study.add_argument("--targets", type=int, default=None)
    study.add_argument("--fabrications", type=int, default=None)
    study.add_argument("--nominals", type=int, default=None)
    study.add_argument("--restarts", type=int, default=None)
    study.add_argument("--smoke", action="store_true", default=None, help="Use 10/10/3 counts")
    _add_evaluator(study)
    _add_common(study)

    plot = sub.add_parser("plot", help="SVG plots of traces, solutions and losses")
    plot.add_argument("--traces", nargs="*", default=None, help="Optimization output dirs")
    plot.add_argument("--losses", default=None, help="losses.csv of a training run")
    plot.add_argument("--tau", type=float, default=None)
    _add_common(plot)

    fixtures = sub.add_parser("fixture-verify", help="Re-derive the robustness fixture values")
    fixtures.add_argument("--samples", type=int, default=None)
    fixtures.add_argument("--tau", type=float, default=None)
    fixtures.add_argument("--noise-std", type=float, default=None)
    _add_common(fixtures, output_required=False)

    recipe = sub.add_parser("recipe", help="Run a named end-to-end experiment")
    recipe.add_argument("name", choices=RECIPE_NAMES)
    _add_common(recipe)
    return parser


def _resolve(args: argparse.Namespace, defaults: dict[str, Any]) -> dict[str, Any]:
    """Apply flags > config file > defaults."""
    file_config = load_config_file(args.config, required=True) if args.config else None
    flags = {key: getattr(args, key, None) for key in defaults}
    return merge_config(defaults, file_config, flags)


def _start(args: argparse.Namespace, params: dict[str, Any]) -> RunConfig:
    """Create the output directory, install logging and write the resolved config."""
    output_dir = prepare_output_dir(args.output, args.force)
    run = RunConfig(
        command=args.command,
        seed=int(params.get("seed", 0)),
        output_dir=output_dir,
        threads=args.threads,
        force=args.force,
        params=params,
    )
    configure_logging("DEBUG" if args.verbose else run.log_level, output_dir)
    run.write_resolved()
    logger.info(f"{args.command}: writing outputs to {output_dir}")
    return run


def _perturbation(kind: str, params: dict[str, Any]) -> PerturbationConfig:
    """Ground-truth fabrication settings: dataset manifest, then flags, then kind defaults."""
    if params.get("data"):
        base = PerturbationConfig.from_dict(load_dataset(params["data"]).manifest["perturbation"])
    else:
        base = PerturbationConfig.for_kind(kind, int(params.get("seed", 0)))
    return PerturbationConfig(
        params["noise_std"] if params.get("noise_std") is not None else base.noise_std,
        params["filter_std"] if params.get("filter_std") is not None else base.filter_std,
        base.seed,
    )


def _evaluator(kind: str, params: dict[str, Any], threads: int) -> ObjectiveEvaluator:
    return make_evaluator(
        kind,
        command=params.get("evaluator_command"),
        n_f=int(params.get("n_f") or CONSTANTS.N_FREQUENCIES),
        max_processes=threads,
    )


def _parse_parent(text: str | None, ckpt: ModelCheckpoint) -> Array:
    dim = ckpt.prior.parent_dim
    if text is None:
        return np.full(dim, 0.5)
    try:
        parent = np.array([float(v) for v in str(text).split(",")])
    except ValueError:
        raise ConfigError(f"--parent must be comma-separated numbers, got '{text}'") from None
    if parent.shape != (dim,):
        raise DimensionError("parent code", parent.shape, (dim,))
    if np.any((parent < 0.0) | (parent > 1.0)):
        raise ValidationError("parent code entries must lie in [0, 1]")
    return parent


def cmd_synth(args: argparse.Namespace) -> int:
    params = _resolve(
        args,
        {
            "kind": "airfoil",
            "n": None,
            "m": CONSTANTS.FABRICATIONS_PER_NOMINAL,
            "source_dir": None,
            "noise_std": None,
            "filter_std": None,
            "seed": 0,
        },
    )
    kind = params["kind"]
    if params["n"] is None:
        params["n"] = (
            CONSTANTS.AIRFOIL_NOMINALS if kind == "airfoil" else CONSTANTS.METASURFACE_NOMINALS
        )
    if int(params["n"]) < 1 or int(params["m"]) < 1:
        raise ConfigError(f"--n and --m must be >= 1, got {params['n']} and {params['m']}")
    base = PerturbationConfig.for_kind(kind, int(params["seed"]))
    cfg = PerturbationConfig(
        params["noise_std"] if params["noise_std"] is not None else base.noise_std,
        params["filter_std"] if params["filter_std"] is not None else base.filter_std,
        int(params["seed"]),
    )
    run = _start(args, params)
    dataset = build_dataset(kind, int(params["n"]), int(params["m"]), cfg, params["source_dir"])
    save_dataset(dataset, run.output_dir)
    print(
        f"{COLORS.GREEN}Dataset written:{COLORS.RESET} {dataset.n_nominal} nominal x "
        f"{dataset.m_fabricated} fabricated {kind} designs in {run.output_dir}"
    )
    return EXIT_OK


def cmd_train(args: argparse.Namespace) -> int:
    params = _resolve(
        args,
        {
            "data": None,
            "parent_dim": None,
            "child_dim": None,
            "noise_dim": CONSTANTS.NOISE_DIM,
            "steps": None,
            "batch_size": CONSTANTS.BATCH_SIZE,
            "lr": CONSTANTS.LEARNING_RATE,
            "lambda_info": CONSTANTS.LAMBDA_INFO,
            "checkpoint_every": 0,
            "log_every": 100,
            "seed": 0,
        },
    )
    dataset = load_dataset(params["data"])
    default_prior = PriorConfig.for_kind(dataset.kind)
    prior = PriorConfig(
        params["parent_dim"] or default_prior.parent_dim,
        params["child_dim"] or default_prior.child_dim,
        int(params["noise_dim"]),
    )
    overrides = {
        "batch_size": int(params["batch_size"]),
        "lr_g": float(params["lr"]),
        "lr_d": float(params["lr"]),
        "lambda_info": float(params["lambda_info"]),
        "seed": int(params["seed"]),
        "checkpoint_every": int(params["checkpoint_every"]),
        "log_every": int(params["log_every"]),
    }
    if params["steps"] is not None:
        overrides["steps"] = int(params["steps"])
    cfg = TrainConfig.for_kind(dataset.kind, **overrides)
    params["prior"], params["train"] = prior.to_dict(), cfg.to_dict()
    run = _start(args, params)
    ckpt = train(dataset, cfg, prior, output_dir=run.output_dir)
    last = ckpt.loss_history[-1] if ckpt.loss_history else {}
    print(
        f"{COLORS.GREEN}Training finished:{COLORS.RESET} {ckpt.step} steps, "
        f"final losses {json.dumps(last)}"
    )
    return EXIT_OK


def cmd_uq(args: argparse.Namespace) -> int:
    params = _resolve(
        args,
        {
            "checkpoint": None,
            "parent": None,
            "n": CONSTANTS.AIRFOIL_MC_SAMPLES,
            "tau": CONSTANTS.TAU,
            "data": None,
            "draw_noise": False,
            "noise_std": None,
            "filter_std": None,
            "evaluator_command": None,
            "n_f": CONSTANTS.N_FREQUENCIES,
            "seed": 0,
        },
    )
    ckpt = load_checkpoint(params["checkpoint"])
    parent = _parse_parent(params["parent"], ckpt)
    perturbation = _perturbation(ckpt.kind, params)
    evaluator = _evaluator(ckpt.kind, params, args.threads)
    run = _start(args, params)
    report = conditional_performance(
        ckpt,
        parent,
        evaluator,
        int(params["n"]),
        perturbation,
        float(params["tau"]),
        int(params["seed"]),
        bool(params["draw_noise"]),
    )
    with open(os.path.join(run.output_dir, "uq_report.json"), "w", encoding="utf-8") as f:
        json.dump(report.to_dict(), f, indent=2, sort_keys=True)
    rows = [["generated", j, v] for j, v in enumerate(report.generated_values)]
    rows += [["ground_truth", j, v] for j, v in enumerate(report.ground_truth_values)]
    write_csv(os.path.join(run.output_dir, "performance.csv"), PERFORMANCE_COLUMNS, rows)
    plot_performance_histograms(
        {"generator": report.generated_values, "ground truth": report.ground_truth_values},
        os.path.join(run.output_dir, "performance.svg"),
        float(params["tau"]),
    )
    print(
        f"{COLORS.CYAN}Generated:{COLORS.RESET} mean {report.generated.mean:.4g}, "
        f"q {report.generated.quantile:.4g}; "
        f"{COLORS.CYAN}ground truth:{COLORS.RESET} mean {report.ground_truth.mean:.4g}, "
        f"q {report.ground_truth.quantile:.4g}; W1 {report.wasserstein:.4g}"
    )
    return EXIT_OK


def cmd_optimize(args: argparse.Namespace) -> int:
    params = _resolve(
        args,
        {
            "checkpoint": None,
            "mode": "quantile",
            "tau": CONSTANTS.TAU,
            "k": 1.0,
            "mc_samples": None,
            "c_star": None,
            "alpha_star": 0.05,
            "n_init": None,
            "n_seq": None,
            "crn": False,
            "draw_noise": False,
            "ground_truth_samples": CONSTANTS.GROUND_TRUTH_SAMPLES,
            "data": None,
            "noise_std": None,
            "filter_std": None,
            "evaluator_command": None,
            "n_f": CONSTANTS.N_FREQUENCIES,
            "seed": 0,
        },
    )
    ckpt = load_checkpoint(params["checkpoint"])
    overrides: dict[str, Any] = {
        "mode": params["mode"],
        "tau": float(params["tau"]),
        "k": float(params["k"]),
        "c_star": params["c_star"],
        "alpha_star": float(params["alpha_star"]),
        "draw_noise": bool(params["draw_noise"]),
        "common_random_numbers": bool(params["crn"]),
    }
    if params["mc_samples"] is not None:
        overrides["mc_samples"] = int(params["mc_samples"])
    cfg = RobustConfig.for_kind(ckpt.kind, **overrides)
    default_budget = BoBudget.for_kind(ckpt.kind)
    budget = BoBudget(
        int(params["n_init"] or default_budget.n_init),
        int(params["n_seq"] if params["n_seq"] is not None else default_budget.n_seq),
    )
    perturbation = _perturbation(ckpt.kind, params)
    evaluator = _evaluator(ckpt.kind, params, args.threads)
    params["robust"], params["budget"] = cfg.to_dict(), budget.to_dict()
    run = _start(args, params)

    trace = bayes_optimize(ckpt, evaluator, cfg, budget, int(params["seed"]))
    trace.write(run.output_dir)
    report = evaluate_solution(
        ckpt,
        trace,
        evaluator,
        perturbation,
        int(params["ground_truth_samples"]),
        cfg.tau,
        int(params["seed"]),
        output_dir=run.output_dir,
    )
    print(
        f"{COLORS.GREEN}Solution ({cfg.mode}):{COLORS.RESET} objective "
        f"{trace.solution_objective:.4g}, nominal {report.nominal:.4g}, "
        f"ground-truth q{cfg.tau:g} {report.ground_truth.quantile:.4g}"
    )
    return EXIT_OK


def _models_by(paths: Sequence[str] | None, attribute: str) -> dict[int, ModelCheckpoint]:
    models: dict[int, ModelCheckpoint] = {}
    for path in paths or []:
        ckpt = load_checkpoint(path)
        models[int(getattr(ckpt.prior, attribute))] = ckpt
    return models


def cmd_study(args: argparse.Namespace) -> int:
    params = _resolve(
        args,
        {
            "data": None,
            "fitting_models": [],
            "wasserstein_models": [],
            "kinds": list(STUDY_KINDS),
            "targets": CONSTANTS.STUDY_TARGETS,
            "fabrications": CONSTANTS.STUDY_FABRICATIONS,
            "nominals": CONSTANTS.STUDY_NOMINALS,
            "restarts": None,
            "smoke": False,
            "evaluator_command": None,
            "n_f": CONSTANTS.N_FREQUENCIES,
            "seed": 0,
        },
    )
    seed = int(params["seed"])
    if params["smoke"]:
        smoke = StudyProtocol.smoke(seed)
        counts = (smoke.n_targets, smoke.n_fabrications, smoke.n_nominals)
    else:
        counts = (int(params["targets"]), int(params["fabrications"]), int(params["nominals"]))
    protocol = StudyProtocol(
        *counts, kinds=tuple(params["kinds"]), seed=seed, restarts=params["restarts"]
    )
    dataset = load_dataset(params["data"])
    fitting = _models_by(params["fitting_models"], "parent_dim")
    wasserstein = _models_by(params["wasserstein_models"], "child_dim")
    if "fitting" in protocol.kinds and not fitting:
        raise ConfigError("the fitting study needs --fitting-models")
    if "wasserstein" in protocol.kinds and not wasserstein:
        raise ConfigError("the Wasserstein study needs --wasserstein-models")
    evaluator = _evaluator(dataset.kind, params, args.threads)
    params["protocol"] = protocol.to_dict()
    run = _start(args, params)
    report = parametric_study(fitting, wasserstein, dataset, evaluator, protocol)
    report.write_csv(os.path.join(run.output_dir, "study.csv"))
    with open(os.path.join(run.output_dir, "study_summary.json"), "w", encoding="utf-8") as f:
        json.dump(report.summary(), f, indent=2, sort_keys=True)
    for kind, by_dim in report.summary().items():
        for dim, stats in by_dim.items():
            print(f"{COLORS.CYAN}{kind}{COLORS.RESET} dim {dim}: mean {stats['mean']:.4g}")
    return EXIT_OK


def cmd_plot(args: argparse.Namespace) -> int:
    params = _resolve(args, {"traces": [], "losses": None, "tau": CONSTANTS.TAU})
    if not params["traces"] and not params["losses"]:
        raise ConfigError("nothing to plot: give --traces and/or --losses")
    traces = {}
    for directory in params["traces"] or []:
        trace = BoTrace.read(directory)
        traces[f"{trace.mode} ({os.path.basename(os.path.normpath(directory))})"] = trace
    run = _start(args, params)

    written = []
    if traces:
        written.append(plot_convergence(traces, os.path.join(run.output_dir, "convergence.svg")))
        samples = {}
        for (label, _), directory in zip(traces.items(), params["traces"]):
            path = os.path.join(directory, SOLUTION_PERFORMANCE_NAME)
            if os.path.exists(path):
                rows = [r for r in read_csv(path) if r["source"] == "ground_truth"]
                samples[label] = np.array([float(r["objective"]) for r in rows])
        if samples:
            written.append(
                plot_performance_histograms(
                    samples,
                    os.path.join(run.output_dir, "solution_performance.svg"),
                    float(params["tau"]),
                )
            )
    if params["losses"]:
        history = [{k: float(v) for k, v in row.items()} for row in read_csv(params["losses"])]
        written.append(plot_losses(history, os.path.join(run.output_dir, "losses.svg")))
    print(f"{COLORS.GREEN}Plots written:{COLORS.RESET} {', '.join(written)}")
    return EXIT_OK


def cmd_fixture_verify(args: argparse.Namespace) -> int:
    params = _resolve(
        args,
        {
            "samples": 10_000,
            "tau": CONSTANTS.TAU,
            "noise_std": CONSTANTS.AIRFOIL_NOISE_STD,
            "seed": 0,
        },
    )
    if args.output:
        run = _start(args, params)
    else:
        configure_logging("DEBUG" if args.verbose else "INFO")
    report = verify_fixtures(
        int(params["samples"]), int(params["seed"]), float(params["tau"]), params["noise_std"]
    )
    if args.output:
        with open(os.path.join(run.output_dir, "fixtures.json"), "w", encoding="utf-8") as f:
            json.dump(report.to_dict(), f, indent=2, sort_keys=True)
    for scores in (report.fragile, report.robust):
        print(
            f"{scores.name:8s} nominal {scores.nominal:8.3f}  "
            f"q{report.tau:g} {scores.quantile:8.3f}  mean {scores.mean:8.3f}"
        )
    if report.gap_holds:
        print(f"{COLORS.GREEN}Robustness gap holds{COLORS.RESET}")
        return EXIT_OK
    print(f"{COLORS.RED}Robustness gap does not hold{COLORS.RESET}", file=sys.stderr)
    return EXIT_RUNTIME


def cmd_recipe(args: argparse.Namespace) -> int:
    params = _resolve(args, {"name": None, "seed": 0})
    run = _start(args, params)
    result = run_recipe(args.name, run.output_dir, int(params["seed"]))
    for mode, report in result.solutions.items():
        print(
            f"{COLORS.BOLD}{mode:8s}{COLORS.RESET} nominal {report.nominal:.4g}  "
            f"q{report.generated.tau:g} {report.generated.quantile:.4g}  "
            f"ground-truth q {report.ground_truth.quantile:.4g}"
        )
    return EXIT_OK


COMMANDS: dict[str, Callable[[argparse.Namespace], int]] = {
    "synth": cmd_synth,
    "train": cmd_train,
    "uq": cmd_uq,
    "optimize": cmd_optimize,
    "study": cmd_study,
    "plot": cmd_plot,
    "fixture-verify": cmd_fixture_verify,
    "recipe": cmd_recipe,
}


def run(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv`` and dispatch; returns the process exit code."""
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        print(f"{COLORS.RED}Error: --threads must be >= 1{COLORS.RESET}", file=sys.stderr)
        return EXIT_CONFIG
    for variable in THREAD_VARIABLES:
        os.environ[variable] = str(args.threads)
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, ValidationError, DimensionError) as e:
        print(f"{COLORS.RED}Error: {e}{COLORS.RESET}", file=sys.stderr)
        return EXIT_CONFIG
    except (GanDufError, OSError) as e:
        print(f"{COLORS.RED}Error: {e}{COLORS.RESET}", file=sys.stderr)
        return EXIT_RUNTIME


def main() -> None:
    """Main entry point for the CLI."""
    sys.exit(run())


if __name__ == "__main__":
    main()
