"""Design objectives: analytic proxies, external commands and the robustness fixtures."""

from gan_duf.objectives.airfoil import (
    AirfoilCoefficients,
    AirfoilFeatures,
    AirfoilProxy,
    airfoil_features,
    airfoil_performance,
)
from gan_duf.objectives.base import (
    INFEASIBLE,
    ObjectiveEvaluator,
    evaluate_many,
    is_infeasible,
)
from gan_duf.objectives.external import ExternalCommandEvaluator
from gan_duf.objectives.fixtures import (
    FRAGILE_PARAMS,
    ROBUST_PARAMS,
    FixtureReport,
    fragile_airfoil,
    robust_airfoil,
    verify_fixtures,
)
from gan_duf.objectives.metasurface import (
    AbsorbanceSpectrum,
    MetasurfaceProxy,
    absorbance_spectrum,
    band_frequencies,
    cell_features,
    metasurface_performance,
)
from gan_duf.objectives.registry import make_evaluator

__all__ = [
    "FRAGILE_PARAMS",
    "INFEASIBLE",
    "ROBUST_PARAMS",
    "AbsorbanceSpectrum",
    "AirfoilCoefficients",
    "AirfoilFeatures",
    "AirfoilProxy",
    "ExternalCommandEvaluator",
    "FixtureReport",
    "MetasurfaceProxy",
    "ObjectiveEvaluator",
    "absorbance_spectrum",
    "airfoil_features",
    "airfoil_performance",
    "band_frequencies",
    "cell_features",
    "evaluate_many",
    "fragile_airfoil",
    "is_infeasible",
    "make_evaluator",
    "metasurface_performance",
    "robust_airfoil",
    "verify_fixtures",
]
