"""Absorbance proxy for metasurface unit cells (``metasurface-proxy/1``).

Features of the level-set field ``phi`` with threshold ``t``:

* soft occupancy ``s = sigmoid((phi - t) / 0.02)``; fill fraction = mean(s),
* perimeter ``P = sum |grad s| / 64`` with periodic differences (the cell tiles),
* number of 4-connected solid components of ``phi > t``.

A single Lorentzian resonance
``A(f) = 0.02 + amp * gamma^2 / ((f - f_r)^2 + gamma^2)`` with
``f_r = 8.5 + 2 (fill - 0.25) - 0.15 (P - 2)``, ``gamma = 0.08 + 0.06 P`` and
``amp = 0.98 (1 - exp(-fill / 0.08)) exp(-0.1 max(components - 1, 0))``
gives absorbance in [0.02, 1]; the objective is ``J = sum_i A(f_i)``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Any

import numpy as np
from scipy import ndimage
from scipy.special import expit

from gan_duf.autodiff.tensor import Array
from gan_duf.config.constants import CONSTANTS
from gan_duf.errors import ConfigError, ValidationError
from gan_duf.objectives.base import INFEASIBLE

PROXY_VERSION = "metasurface-proxy/1"
# Loose bound on |J(a) - J(b)| / ||a - b|| while the component count stays fixed
LIPSCHITZ_BOUND = 5.0e2


@dataclass(frozen=True)
class MetasurfaceCoefficients:
    """Constants of the proxy formula (frequencies in THz)."""

    edge_width: float = 0.02
    floor: float = 0.02
    center: float = 8.5
    fill_shift: float = 2.0
    fill_reference: float = 0.25
    perimeter_shift: float = 0.15
    perimeter_reference: float = 2.0
    width_base: float = 0.08
    width_per_perimeter: float = 0.06
    fill_scale: float = 0.08
    component_decay: float = 0.1


@dataclass(frozen=True)
class AbsorbanceSpectrum:
    frequencies: Array
    absorbance: Array

    @property
    def total(self) -> float:
        return float(np.sum(self.absorbance))


@dataclass(frozen=True)
class CellFeatures:
    fill: float
    perimeter: float
    components: int


def band_frequencies(n_f: int = CONSTANTS.N_FREQUENCIES) -> Array:
    """``n_f`` equidistant frequencies spanning the band; the midpoint when ``n_f`` is 1."""
    if n_f < 1:
        raise ConfigError(f"n_f must be >= 1, got {n_f}")
    if n_f == 1:
        return np.array([0.5 * (CONSTANTS.FREQ_MIN + CONSTANTS.FREQ_MAX)])
    return np.linspace(CONSTANTS.FREQ_MIN, CONSTANTS.FREQ_MAX, n_f)


def cell_features(
    values: Array,
    threshold: float = CONSTANTS.LEVEL_SET_THRESHOLD,
    coeffs: MetasurfaceCoefficients = MetasurfaceCoefficients(),
) -> CellFeatures:
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 2 or not np.all(np.isfinite(values)):
        raise ValidationError("metasurface proxy needs a finite 2-D field")
    occupancy = expit((values - threshold) / coeffs.edge_width)
    jumps = np.abs(np.roll(occupancy, -1, axis=0) - occupancy).sum()
    jumps += np.abs(np.roll(occupancy, -1, axis=1) - occupancy).sum()
    _, components = ndimage.label(values > threshold)
    return CellFeatures(float(occupancy.mean()), float(jumps) / values.shape[0], int(components))


def absorbance_spectrum(
    values: Array,
    n_f: int = CONSTANTS.N_FREQUENCIES,
    threshold: float = CONSTANTS.LEVEL_SET_THRESHOLD,
    coeffs: MetasurfaceCoefficients = MetasurfaceCoefficients(),
) -> AbsorbanceSpectrum:
    c = coeffs
    feats = cell_features(values, threshold, c)
    freqs = band_frequencies(n_f)
    resonance = (
        c.center
        + c.fill_shift * (feats.fill - c.fill_reference)
        - c.perimeter_shift * (feats.perimeter - c.perimeter_reference)
    )
    width = c.width_base + c.width_per_perimeter * feats.perimeter
    amplitude = (
        (1.0 - c.floor)
        * (1.0 - np.exp(-feats.fill / c.fill_scale))
        * np.exp(-c.component_decay * max(feats.components - 1, 0))
    )
    line = width**2 / ((freqs - resonance) ** 2 + width**2)
    return AbsorbanceSpectrum(freqs, c.floor + amplitude * line)


def metasurface_performance(
    values: Array,
    n_f: int = CONSTANTS.N_FREQUENCIES,
    threshold: float = CONSTANTS.LEVEL_SET_THRESHOLD,
) -> float:
    """Total proxy absorbance ``J`` over the band, in ``[0, n_f]``."""
    return absorbance_spectrum(values, n_f, threshold).total


class MetasurfaceProxy:
    """Callable evaluator wrapper around :func:`metasurface_performance`."""

    kind = "metasurface"
    name = "metasurface_proxy"

    def __init__(
        self,
        n_f: int = CONSTANTS.N_FREQUENCIES,
        threshold: float = CONSTANTS.LEVEL_SET_THRESHOLD,
        coeffs: MetasurfaceCoefficients | None = None,
    ):
        band_frequencies(n_f)
        self.n_f = n_f
        self.threshold = threshold
        self.coeffs = coeffs or MetasurfaceCoefficients()

    def __call__(self, design: Array) -> float:
        try:
            return absorbance_spectrum(design, self.n_f, self.threshold, self.coeffs).total
        except ValidationError:
            return INFEASIBLE

    def describe(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "version": PROXY_VERSION,
            "n_f": self.n_f,
            "threshold": self.threshold,
            **asdict(self.coeffs),
        }
