"""Static SVG plots: fabricated-performance histograms, BO convergence and training losses."""

import logging
import os
from collections.abc import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from gan_duf.autodiff.tensor import Array  # noqa: E402
from gan_duf.config.constants import CONSTANTS  # noqa: E402
from gan_duf.optimizer.trace import BoTrace  # noqa: E402
from gan_duf.uq.statistics import estimate_quantile  # noqa: E402

logger = logging.getLogger(__name__)

HISTOGRAM_BINS = 30


def _save(fig: plt.Figure, path: str) -> str:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fig.savefig(path, format="svg", bbox_inches="tight")
    plt.close(fig)
    logger.info(f"Plot written to {path}")
    return path


def plot_performance_histograms(
    samples: Mapping[str, Array],
    path: str,
    tau: float = CONSTANTS.TAU,
    title: str = "Performance of fabricated designs",
) -> str:
    """Overlay histograms of objective values, one per label, with their tau-quantiles marked.

    Infeasible (non-finite) values are left out of the histograms.
    """
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    finite = {label: np.asarray(v)[np.isfinite(v)] for label, v in samples.items()}
    pooled = np.concatenate([v for v in finite.values() if v.size] or [np.zeros(1)])
    bins = np.histogram_bin_edges(pooled, bins=HISTOGRAM_BINS)
    for index, (label, values) in enumerate(finite.items()):
        if values.size == 0:
            logger.warning(f"No feasible values for '{label}'; histogram skipped")
            continue
        color = f"C{index}"
        ax.hist(values, bins=bins, alpha=0.5, color=color, label=label, density=True)
        quantile = estimate_quantile(values, tau).value
        ax.axvline(quantile, color=color, linestyle="--", linewidth=1.2)
    ax.set_xlabel("objective")
    ax.set_ylabel("density")
    ax.set_title(f"{title} (dashed: {tau:g}-quantile)")
    ax.legend()
    return _save(fig, path)


def plot_convergence(traces: Mapping[str, BoTrace], path: str) -> str:
    """Best objective so far against evaluation count, one curve per trace."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for label, trace in traces.items():
        incumbents = np.array(trace.incumbents(), dtype=np.float64)
        incumbents[~np.isfinite(incumbents)] = np.nan
        ax.plot(np.arange(1, incumbents.size + 1), incumbents, label=label, drawstyle="steps-post")
        n_init = int(trace.budget.get("n_init", 0))
        if n_init:
            ax.axvline(n_init + 0.5, color="grey", linestyle=":", linewidth=1.0)
    ax.set_xlabel("evaluation")
    ax.set_ylabel("best objective so far")
    ax.set_title("Bayesian optimization convergence")
    ax.legend()
    return _save(fig, path)


def plot_losses(history: Sequence[Mapping[str, float]], path: str) -> str:
    """Discriminator, generator and information losses against training step."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    steps = [float(row["step"]) for row in history]
    for key in ("loss_d", "loss_g", "info"):
        ax.plot(steps, [float(row[key]) for row in history], label=key)
    ax.set_xlabel("step")
    ax.set_ylabel("loss")
    ax.set_title("Training losses")
    ax.legend()
    return _save(fig, path)


def plot_airfoils(nominal: Array, fabricated: Array, path: str, max_fabricated: int = 10) -> str:
    """Nominal airfoil contour with a few fabricated realizations drawn behind it."""
    fig, ax = plt.subplots(figsize=(6.0, 2.5))
    for design in fabricated[: max(max_fabricated, 0)]:
        ax.plot(design[:, 0], design[:, 1], color="C1", alpha=0.3, linewidth=0.8)
    ax.plot(nominal[:, 0], nominal[:, 1], color="C0", linewidth=1.5, label="nominal")
    ax.set_aspect("equal")
    ax.set_title(f"Nominal design and {min(len(fabricated), max_fabricated)} fabrications")
    ax.legend()
    return _save(fig, path)


def plot_field(field: Array, path: str, threshold: float = CONSTANTS.LEVEL_SET_THRESHOLD) -> str:
    """Level-set field with its zero contour."""
    fig, ax = plt.subplots(figsize=(4.0, 4.0))
    limit = float(np.max(np.abs(field))) or 1.0
    ax.imshow(field, cmap="RdBu_r", vmin=-limit, vmax=limit)
    if np.nanmin(field) < threshold < np.nanmax(field):
        ax.contour(field, levels=[threshold], colors="k", linewidths=1.0)
    ax.set_xticks([])
    ax.set_yticks([])
    ax.set_title("Unit cell")
    return _save(fig, path)
