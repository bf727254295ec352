"""Lift-to-drag proxy for airfoil contours (``airfoil-proxy/2``).

The score is a smooth function of three chord-normalized features:

* area ``A`` of the closed contour (shoelace formula),
* camber ``h``: mean y of the contour minus the trailing-edge midpoint y,
* roughness ``R``: sum of squared second differences of consecutive points.

``C_L = 0.5 + 25 h`` and
``C_D = 0.006 + 0.06 A + 1.5 h^2 + 0.01 R + 0.2 softplus((0.045 - A) / 0.002)``;
the score is ``C_L / C_D`` for non-negative lift and ``C_L C_D / C_ref^2`` for
negative lift (``C_ref = 0.01``), so extra drag lowers the score whatever the sign of
``C_L``. The softplus term is a thinness barrier: sections just above it score well
nominally but lose badly when fabrication noise pushes their area down.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from typing import Any

import numpy as np

from gan_duf.autodiff.tensor import Array
from gan_duf.objectives.base import INFEASIBLE

logger = logging.getLogger(__name__)

PROXY_VERSION = "airfoil-proxy/2"
MIN_CHORD = 1e-12
# Loose empirical bound on |f(a) - f(b)| / ||a - b|| for contours in design space
LIPSCHITZ_BOUND = 5.0e4


@dataclass(frozen=True)
class AirfoilCoefficients:
    """Constants of the proxy formula."""

    lift_base: float = 0.5
    lift_per_camber: float = 25.0
    drag_base: float = 0.006
    drag_per_area: float = 0.06
    drag_per_camber_sq: float = 1.5
    drag_per_roughness: float = 0.01
    barrier_weight: float = 0.2
    barrier_area: float = 0.045
    barrier_width: float = 0.002
    negative_lift_drag_ref: float = 0.01


@dataclass(frozen=True)
class AirfoilFeatures:
    area: float
    camber: float
    roughness: float
    chord: float


def airfoil_features(points: Array) -> AirfoilFeatures | None:
    """Chord-normalized area, camber and roughness; None when the contour is unusable."""
    points = np.asarray(points, dtype=np.float64)
    if points.ndim != 2 or points.shape[1] != 2 or points.shape[0] < 3:
        return None
    if not np.all(np.isfinite(points)):
        return None
    x_min, x_max = points[:, 0].min(), points[:, 0].max()
    chord = float(x_max - x_min)
    if chord <= MIN_CHORD:
        return None
    scaled = np.column_stack([(points[:, 0] - x_min) / chord, points[:, 1] / chord])
    x, y = scaled[:, 0], scaled[:, 1]
    area = 0.5 * abs(float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y)))
    trailing_edge = 0.5 * (y[0] + y[-1])
    camber = float(np.mean(y) - trailing_edge)
    second = scaled[2:] - 2.0 * scaled[1:-1] + scaled[:-2]
    roughness = float(np.sum(second * second))
    return AirfoilFeatures(area, camber, roughness, chord)


def lift_drag(
    features: AirfoilFeatures, coeffs: AirfoilCoefficients = AirfoilCoefficients()
) -> tuple[float, float]:
    c = coeffs
    lift = c.lift_base + c.lift_per_camber * features.camber
    barrier = np.logaddexp(0.0, (c.barrier_area - features.area) / c.barrier_width)
    drag = (
        c.drag_base
        + c.drag_per_area * features.area
        + c.drag_per_camber_sq * features.camber**2
        + c.drag_per_roughness * features.roughness
        + c.barrier_weight * float(barrier)
    )
    return float(lift), float(drag)


def airfoil_performance(
    points: Array, coeffs: AirfoilCoefficients = AirfoilCoefficients()
) -> float:
    """Proxy ``C_L / C_D`` of a contour; :data:`INFEASIBLE` for non-finite or zero-chord input."""
    features = airfoil_features(points)
    if features is None:
        return INFEASIBLE
    lift, drag = lift_drag(features, coeffs)
    if lift >= 0.0:
        return lift / drag
    # Strictly decreasing in drag for negative lift too; continuous at zero lift
    return lift * drag / coeffs.negative_lift_drag_ref**2


class AirfoilProxy:
    """Callable evaluator wrapper around :func:`airfoil_performance`."""

    kind = "airfoil"
    name = "airfoil_proxy"

    def __init__(self, coeffs: AirfoilCoefficients | None = None):
        self.coeffs = coeffs or AirfoilCoefficients()

    def __call__(self, design: Array) -> float:
        value = airfoil_performance(design, self.coeffs)
        if value == INFEASIBLE:
            logger.debug("Airfoil proxy: infeasible contour")
        return value

    def describe(self) -> dict[str, Any]:
        return {"name": self.name, "version": PROXY_VERSION, **asdict(self.coeffs)}
