"""The fragile/robust airfoil pair that exhibits a robustness gap under the proxy.

The fragile section is thinner: it scores higher nominally, but fabrication
noise pushes its area into the drag barrier, so its lower quantile falls
below the robust section's.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from typing import Any

import numpy as np

from gan_duf.autodiff.tensor import Array
from gan_duf.config.constants import CONSTANTS
from gan_duf.geometry.airfoil import AirfoilDesign, naca_airfoil, perturb_airfoil
from gan_duf.geometry.ffd import PerturbationConfig
from gan_duf.objectives.airfoil import airfoil_performance
from gan_duf.uq.statistics import estimate_quantile
from gan_duf.utils.rng import derive_seeds

logger = logging.getLogger(__name__)

# (max camber, camber position, thickness) of four-digit sections
FRAGILE_PARAMS = (0.02, 0.4, 0.085)
ROBUST_PARAMS = (0.02, 0.4, 0.12)
VERIFY_SAMPLES = 10_000


def fragile_airfoil() -> AirfoilDesign:
    return naca_airfoil(*FRAGILE_PARAMS)


def robust_airfoil() -> AirfoilDesign:
    return naca_airfoil(*ROBUST_PARAMS)


@dataclass(frozen=True)
class FixtureScores:
    name: str
    nominal: float
    quantile: float
    mean: float


@dataclass(frozen=True)
class FixtureReport:
    fragile: FixtureScores
    robust: FixtureScores
    n_samples: int
    tau: float

    @property
    def gap_holds(self) -> bool:
        """Fragile wins nominally and loses in the lower quantile."""
        return (
            self.fragile.nominal > self.robust.nominal
            and self.fragile.quantile < self.robust.quantile
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "n_samples": self.n_samples,
            "tau": self.tau,
            "gap_holds": self.gap_holds,
            "fragile": asdict(self.fragile),
            "robust": asdict(self.robust),
        }


def perturbed_scores(design: AirfoilDesign, n: int, cfg: PerturbationConfig) -> Array:
    """Proxy scores of ``n`` simulated fabrications, one derived seed per draw."""
    seeds = derive_seeds(cfg.seed, n, 7)
    return np.array(
        [
            airfoil_performance(perturb_airfoil(design, cfg, np.random.default_rng(s)).points)
            for s in seeds
        ]
    )


def _score(
    name: str, design: AirfoilDesign, n: int, cfg: PerturbationConfig, tau: float
) -> FixtureScores:
    values = perturbed_scores(design, n, cfg)
    return FixtureScores(
        name,
        airfoil_performance(design.points),
        estimate_quantile(values, tau).value,
        float(np.mean(values)),
    )


def verify_fixtures(
    n_samples: int = VERIFY_SAMPLES,
    seed: int = 0,
    tau: float = CONSTANTS.TAU,
    noise_std: float = CONSTANTS.AIRFOIL_NOISE_STD,
) -> FixtureReport:
    """Re-derive nominal scores and lower quantiles of both fixtures by Monte Carlo."""
    cfg = PerturbationConfig(noise_std, seed=seed)
    report = FixtureReport(
        _score("fragile", fragile_airfoil(), n_samples, cfg, tau),
        _score("robust", robust_airfoil(), n_samples, cfg, tau),
        n_samples,
        tau,
    )
    logger.info(
        f"Fixture check ({n_samples} fabrications): fragile nominal={report.fragile.nominal:.2f} "
        f"q={report.fragile.quantile:.2f}; robust nominal={report.robust.nominal:.2f} "
        f"q={report.robust.quantile:.2f}; gap holds: {report.gap_holds}"
    )
    return report
