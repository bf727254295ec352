"""Free-form deformation with tensor-product Bernstein polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import NDArray
from scipy.special import comb

from gan_duf.config.constants import CONSTANTS
from gan_duf.errors import ConfigError

Array = NDArray[np.float64]
BBox = tuple[float, float, float, float]


def bernstein(n: int, i: int, u: Any) -> Any:
    """The i-th Bernstein polynomial of degree n, ``C(n, i) u^i (1 - u)^(n - i)``.

    Raises:
        IndexError: If ``i`` is outside ``[0, n]``.
    """
    if i < 0 or i > n:
        raise IndexError(f"Bernstein index {i} outside [0, {n}]")
    u = np.asarray(u, dtype=np.float64)
    value = comb(n, i, exact=True) * u**i * (1.0 - u) ** (n - i)
    return float(value) if value.ndim == 0 else value


def bernstein_basis(n: int, u: Array) -> Array:
    """All degree-n Bernstein polynomials at ``u``; shape ``(len(u), n + 1)``."""
    u = np.asarray(u, dtype=np.float64).reshape(-1)
    return np.stack([bernstein(n, i, u) for i in range(n + 1)], axis=1)


@dataclass(frozen=True)
class PerturbationConfig:
    """Simulated fabrication noise.

    ``noise_std`` is in chord units for airfoils and pixels for metasurfaces;
    ``filter_std`` is the Gaussian smoothing width in pixels (metasurfaces only).
    """

    noise_std: float
    filter_std: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if not self.noise_std > 0.0:
            raise ConfigError(f"noise_std must be > 0, got {self.noise_std}")
        if self.filter_std < 0.0:
            raise ConfigError(f"filter_std must be >= 0, got {self.filter_std}")

    @classmethod
    def for_kind(cls, kind: str, seed: int = 0) -> PerturbationConfig:
        if kind == "airfoil":
            return cls(CONSTANTS.AIRFOIL_NOISE_STD, 0.0, seed)
        if kind == "metasurface":
            return cls(CONSTANTS.METASURFACE_NOISE_STD, CONSTANTS.METASURFACE_FILTER_STD, seed)
        raise ConfigError(f"unknown design kind '{kind}'")

    def to_dict(self) -> dict[str, Any]:
        return {"noise_std": self.noise_std, "filter_std": self.filter_std, "seed": self.seed}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> PerturbationConfig:
        return cls(float(data["noise_std"]), float(data["filter_std"]), int(data["seed"]))


@dataclass(frozen=True)
class ControlLattice:
    """FFD control points stored as ``points[l, m] = (x, y)``.

    ``l`` runs over the ``cols`` columns along x, ``m`` over the ``rows`` along y.
    """

    points: Array
    bbox: BBox

    def __post_init__(self) -> None:
        pts = np.array(self.points, dtype=np.float64)
        if pts.ndim != 3 or pts.shape[2] != 2 or pts.shape[0] < 2 or pts.shape[1] < 2:
            raise ConfigError(f"control lattice must have shape (cols, rows, 2), got {pts.shape}")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def cols(self) -> int:
        return int(self.points.shape[0])

    @property
    def rows(self) -> int:
        return int(self.points.shape[1])

    @classmethod
    def regular(cls, bbox: BBox, cols: int, rows: int) -> ControlLattice:
        """The unperturbed lattice spanning ``bbox`` uniformly."""
        x_min, x_max, y_min, y_max = bbox
        xs = x_min + np.arange(cols) / (cols - 1) * (x_max - x_min)
        ys = y_min + np.arange(rows) / (rows - 1) * (y_max - y_min)
        grid = np.stack(np.meshgrid(xs, ys, indexing="ij"), axis=-1)
        return cls(grid, bbox)

    def translated(self, offset: tuple[float, float]) -> ControlLattice:
        return ControlLattice(self.points + np.asarray(offset, dtype=np.float64), self.bbox)

    def with_offsets(self, offsets: Array) -> ControlLattice:
        return ControlLattice(self.points + offsets, self.bbox)


def bounding_box(points: Array) -> BBox:
    return (
        float(points[:, 0].min()),
        float(points[:, 0].max()),
        float(points[:, 1].min()),
        float(points[:, 1].max()),
    )


def deform_points(u: Array, v: Array, lattice: ControlLattice) -> Array:
    """Evaluate ``sum_l sum_m B_l(u) B_m(v) P[l, m]`` at every ``(u, v)`` pair."""
    bu = bernstein_basis(lattice.cols - 1, u)
    bv = bernstein_basis(lattice.rows - 1, v)
    return np.einsum("kl,km,lmd->kd", bu, bv, lattice.points)


def perturb_lattice(
    lattice: ControlLattice,
    noise_std: float,
    rng: np.random.Generator,
    axes: tuple[int, ...] = (1,),
    pin_end_columns: bool = True,
) -> ControlLattice:
    """Add i.i.d. Gaussian noise to the selected coordinate axes of the control points.

    With ``pin_end_columns`` the first and last lattice columns are left untouched.
    """
    offsets = np.zeros_like(lattice.points)
    first, last = (1, lattice.cols - 1) if pin_end_columns else (0, lattice.cols)
    shape = (last - first, lattice.rows)
    for axis in axes:
        offsets[first:last, :, axis] = rng.normal(0.0, noise_std, size=shape)
    return lattice.with_offsets(offsets)


