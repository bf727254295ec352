"""Bayesian optimization of parent codes under fabrication uncertainty."""

from gan_duf.optimizer.acquisition import Proposal, expected_improvement, maximize_ei
from gan_duf.optimizer.bayesopt import BoBudget, bayes_optimize, surrogate_targets
from gan_duf.optimizer.gp import GpSurrogate, KernelParams, factorize, se_kernel
from gan_duf.optimizer.lhs import lhs
from gan_duf.optimizer.robust import (
    MODES,
    ObjectiveEstimate,
    RobustConfig,
    evaluate_design_objective,
    reliability,
    statistic,
)
from gan_duf.optimizer.solution import SolutionReport, evaluate_solution
from gan_duf.optimizer.trace import BoRecord, BoTrace

__all__ = [
    "MODES",
    "BoBudget",
    "BoRecord",
    "BoTrace",
    "GpSurrogate",
    "KernelParams",
    "ObjectiveEstimate",
    "Proposal",
    "RobustConfig",
    "SolutionReport",
    "bayes_optimize",
    "evaluate_design_objective",
    "evaluate_solution",
    "expected_improvement",
    "factorize",
    "lhs",
    "maximize_ei",
    "reliability",
    "se_kernel",
    "statistic",
    "surrogate_targets",
]
