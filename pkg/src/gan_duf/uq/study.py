"""Parametric studies of trained models: fitting errors and Wasserstein distances."""

from __future__ import annotations

import logging
import math
from collections.abc import Mapping
from dataclasses import asdict, dataclass, field
from typing import Any, NamedTuple

import numpy as np

from gan_duf.autodiff.tensor import Array
from gan_duf.config.constants import CONSTANTS
from gan_duf.dataset.store import DesignDataset, fabricate
from gan_duf.errors import ConfigError, DegenerateGeometryError
from gan_duf.geometry.ffd import PerturbationConfig
from gan_duf.hgan.checkpoint import ModelCheckpoint
from gan_duf.objectives.base import INFEASIBLE, ObjectiveEvaluator, evaluate_many
from gan_duf.reports import STUDY_COLUMNS, write_csv
from gan_duf.uq.fitting import fit_nominal
from gan_duf.uq.sampling import nominal_design, sample_fabricated
from gan_duf.uq.statistics import PerformanceSummary, summarize, wasserstein1
from gan_duf.utils.rng import derive_seed

logger = logging.getLogger(__name__)

STUDY_KINDS = ("fitting", "wasserstein")

# Stream keys for seed derivation
_TARGETS = 20
_FIT_STARTS = 21
_PARENTS = 30
_GROUND_TRUTH = 31
_GENERATED = 32


@dataclass(frozen=True)
class StudyProtocol:
    """Sample counts and seeds of a parametric study."""

    n_targets: int = CONSTANTS.STUDY_TARGETS
    n_fabrications: int = CONSTANTS.STUDY_FABRICATIONS
    n_nominals: int = CONSTANTS.STUDY_NOMINALS
    kinds: tuple[str, ...] = STUDY_KINDS
    seed: int = 0
    restarts: int | None = None
    draw_noise: bool = False

    def __post_init__(self) -> None:
        if min(self.n_targets, self.n_fabrications, self.n_nominals) < 1:
            raise ConfigError("study sample counts must all be >= 1")
        unknown = set(self.kinds) - set(STUDY_KINDS)
        if unknown or not self.kinds:
            raise ConfigError(f"study kinds must be drawn from {STUDY_KINDS}, got {self.kinds}")

    @classmethod
    def smoke(cls, seed: int = 0) -> StudyProtocol:
        return cls(10, 10, 3, seed=seed)

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["kinds"] = list(self.kinds)
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> StudyProtocol:
        known = {k: data[k] for k in cls.__dataclass_fields__ if k in data}
        if "kinds" in known:
            known["kinds"] = tuple(known["kinds"])
        return cls(**known)


class StudyRecord(NamedTuple):
    study_kind: str
    dim_setting: int
    replicate_id: int
    metric_value: float


@dataclass
class StudyReport:
    protocol: StudyProtocol
    records: list[StudyRecord] = field(default_factory=list)

    def values(self, kind: str, dim: int) -> Array:
        return np.array(
            [r.metric_value for r in self.records if r.study_kind == kind and r.dim_setting == dim]
        )

    def summary(self) -> dict[str, dict[str, dict[str, float]]]:
        """Mean, median and max per study kind and dimension setting (finite values only)."""
        out: dict[str, dict[str, dict[str, float]]] = {}
        for kind in dict.fromkeys(r.study_kind for r in self.records):
            dims = sorted({r.dim_setting for r in self.records if r.study_kind == kind})
            out[kind] = {}
            for dim in dims:
                vals = self.values(kind, dim)
                vals = vals[np.isfinite(vals)]
                out[kind][str(dim)] = {
                    "mean": float(vals.mean()) if vals.size else math.nan,
                    "median": float(np.median(vals)) if vals.size else math.nan,
                    "max": float(vals.max()) if vals.size else math.nan,
                    "count": float(vals.size),
                }
        return out

    def write_csv(self, path: str) -> str:
        return write_csv(path, STUDY_COLUMNS, [list(r) for r in self.records])


def fitting_study(
    models: Mapping[int, ModelCheckpoint],
    dataset: DesignDataset,
    protocol: StudyProtocol,
) -> list[StudyRecord]:
    """Fitting error of ``protocol.n_targets`` dataset nominals for each parent dimension.

    The same targets are used for every model.
    """
    rng = np.random.default_rng(derive_seed(protocol.seed, _TARGETS))
    replace = protocol.n_targets > dataset.n_nominal
    indices = rng.choice(dataset.n_nominal, size=protocol.n_targets, replace=replace)
    records = []
    for dim in sorted(models):
        ckpt = models[dim]
        normalizer = ckpt.normalizer or dataset.normalizer
        for replicate, index in enumerate(indices):
            target = normalizer.normalize(dataset.nominal[index])
            seed = derive_seed(protocol.seed, _FIT_STARTS, dim, replicate)
            result = fit_nominal(ckpt, target, protocol.restarts, rng=seed)
            records.append(StudyRecord("fitting", dim, replicate, result.fitting_error))
        logger.info(f"Fitting study, parent dim {dim}: {protocol.n_targets} targets done")
    return records


def ground_truth_values(
    kind: str,
    nominal: Array,
    evaluator: ObjectiveEvaluator,
    perturbation: PerturbationConfig,
    seeds: list[int],
) -> Array:
    """Objective values of simulated fabrications of ``nominal`` (design space)."""
    designs = []
    for seed in seeds:
        try:
            designs.append(fabricate(kind, nominal, perturbation, seed))
        except DegenerateGeometryError:
            logger.warning("Degenerate generated nominal design; fabrication skipped")
            return np.full(len(seeds), INFEASIBLE)
    return evaluate_many(evaluator, designs)


def _finite(values: Array) -> Array:
    return values[np.isfinite(values)]


def wasserstein_study(
    models: Mapping[int, ModelCheckpoint],
    evaluator: ObjectiveEvaluator,
    perturbation: PerturbationConfig,
    protocol: StudyProtocol,
) -> list[StudyRecord]:
    """W1 between ground-truth and generator fabrication performance, per child dimension."""
    records = []
    for dim in sorted(models):
        ckpt = models[dim]
        parents = np.random.default_rng(derive_seed(protocol.seed, _PARENTS)).uniform(
            size=(protocol.n_nominals, ckpt.prior.parent_dim)
        )
        for replicate, parent in enumerate(parents):
            nominal = nominal_design(ckpt, parent)
            seeds = [
                derive_seed(protocol.seed, _GROUND_TRUTH, dim, replicate, j)
                for j in range(protocol.n_fabrications)
            ]
            truth = ground_truth_values(ckpt.kind, nominal, evaluator, perturbation, seeds)
            rng = np.random.default_rng(derive_seed(protocol.seed, _GENERATED, dim, replicate))
            generated = evaluate_many(
                evaluator,
                sample_fabricated(
                    ckpt, parent, protocol.n_fabrications, rng, draw_noise=protocol.draw_noise
                ),
            )
            a, b = _finite(truth), _finite(generated)
            if a.size and b.size:
                distance = wasserstein1(a, b)
            else:
                logger.warning(f"Child dim {dim}, nominal {replicate}: no feasible values")
                distance = math.nan
            records.append(StudyRecord("wasserstein", dim, replicate, distance))
        logger.info(f"Wasserstein study, child dim {dim}: {protocol.n_nominals} nominals done")
    return records


def parametric_study(
    fitting_models: Mapping[int, ModelCheckpoint],
    wasserstein_models: Mapping[int, ModelCheckpoint],
    dataset: DesignDataset,
    evaluator: ObjectiveEvaluator,
    protocol: StudyProtocol,
    perturbation: PerturbationConfig | None = None,
) -> StudyReport:
    """Run the study kinds selected in ``protocol``.

    Args:
        fitting_models: Models keyed by parent dimension.
        wasserstein_models: Models keyed by child dimension.
        dataset: Supplies fitting targets and the perturbation settings.
        evaluator: Objective used for the Wasserstein comparison.
        protocol: Sample counts, seeds and study kinds.
        perturbation: Ground-truth fabrication settings; read from the dataset
            manifest when None.
    """
    report = StudyReport(protocol)
    if "fitting" in protocol.kinds:
        report.records.extend(fitting_study(fitting_models, dataset, protocol))
    if "wasserstein" in protocol.kinds:
        if perturbation is None:
            perturbation = PerturbationConfig.from_dict(dataset.manifest["perturbation"])
        report.records.extend(
            wasserstein_study(wasserstein_models, evaluator, perturbation, protocol)
        )
    return report


@dataclass
class ConditionalReport:
    """Performance distribution of one parent code from the generator and from ground truth."""

    parent: list[float]
    generated: PerformanceSummary
    ground_truth: PerformanceSummary
    wasserstein: float
    generated_values: Array
    ground_truth_values: Array

    def to_dict(self) -> dict[str, Any]:
        return {
            "parent": self.parent,
            "generated": self.generated.to_dict(),
            "ground_truth": self.ground_truth.to_dict(),
            "wasserstein": self.wasserstein,
        }


def conditional_performance(
    ckpt: ModelCheckpoint,
    parent: Array,
    evaluator: ObjectiveEvaluator,
    n: int,
    perturbation: PerturbationConfig,
    tau: float = CONSTANTS.TAU,
    seed: int = 0,
    draw_noise: bool = False,
) -> ConditionalReport:
    """Compare ``n`` generator fabrications of ``parent`` with ``n`` simulated ones."""
    parent = np.asarray(parent, dtype=np.float64)
    nominal = nominal_design(ckpt, parent)
    seeds = [derive_seed(seed, _GROUND_TRUTH, j) for j in range(n)]
    truth = ground_truth_values(ckpt.kind, nominal, evaluator, perturbation, seeds)
    rng = np.random.default_rng(derive_seed(seed, _GENERATED))
    generated = evaluate_many(
        evaluator, sample_fabricated(ckpt, parent, n, rng, draw_noise=draw_noise)
    )
    a, b = _finite(generated), _finite(truth)
    distance = wasserstein1(a, b) if a.size and b.size else math.nan
    return ConditionalReport(
        parent.tolist(),
        summarize(generated, tau),
        summarize(truth, tau),
        distance,
        generated,
        truth,
    )
