"""Uncertainty quantification on trained models."""

from gan_duf.uq.fitting import FitResult, fit_nominal
from gan_duf.uq.sampling import draw_child_codes, nominal_design, sample_fabricated
from gan_duf.uq.statistics import (
    PerformanceSummary,
    QuantileEstimate,
    estimate_quantile,
    summarize,
    wasserstein1,
)
from gan_duf.uq.study import (
    STUDY_KINDS,
    ConditionalReport,
    StudyProtocol,
    StudyRecord,
    StudyReport,
    conditional_performance,
    fitting_study,
    ground_truth_values,
    parametric_study,
    wasserstein_study,
)

__all__ = [
    "STUDY_KINDS",
    "ConditionalReport",
    "FitResult",
    "PerformanceSummary",
    "QuantileEstimate",
    "StudyProtocol",
    "StudyRecord",
    "StudyReport",
    "conditional_performance",
    "draw_child_codes",
    "estimate_quantile",
    "fit_nominal",
    "fitting_study",
    "ground_truth_values",
    "nominal_design",
    "parametric_study",
    "sample_fabricated",
    "summarize",
    "wasserstein1",
    "wasserstein_study",
]
