"""Airfoil designs: validation, synthetic family, coordinate files and FFD fabrication."""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass

import numpy as np

from gan_duf.config.constants import CONSTANTS
from gan_duf.errors import ConfigError, DegenerateGeometryError, ValidationError
from gan_duf.geometry.ffd import (
    Array,
    ControlLattice,
    PerturbationConfig,
    bounding_box,
    deform_points,
    perturb_lattice,
)

logger = logging.getLogger(__name__)

AIRFOIL_FILE_EXTENSIONS = (".dat", ".txt")

# Uniform sampling ranges of the synthetic four-digit family.
CAMBER_RANGE = (0.0, 0.06)
CAMBER_POSITION_RANGE = (0.3, 0.6)
THICKNESS_RANGE = (0.06, 0.16)


@dataclass(frozen=True)
class AirfoilDesign:
    """A closed airfoil contour of ``CONSTANTS.AIRFOIL_POINTS`` (x, y) points.

    Points run from the trailing edge over the upper surface to the leading edge
    and back along the lower surface.
    """

    points: Array

    def __post_init__(self) -> None:
        pts = np.array(self.points, dtype=np.float64)
        expected = (CONSTANTS.AIRFOIL_POINTS, 2)
        if pts.shape != expected:
            raise ValidationError(f"airfoil must have shape {expected}, got {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise ValidationError("airfoil coordinates must be finite")
        if not pts[:, 0].max() > pts[:, 0].min():
            raise DegenerateGeometryError("airfoil bounding box has zero width")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)


def parametric_coords(design: AirfoilDesign) -> tuple[Array, Array]:
    """Map every point into the unit square spanned by the design's bounding box.

    Raises:
        DegenerateGeometryError: If the box has zero extent along either axis.
    """
    x_min, x_max, y_min, y_max = bounding_box(design.points)
    if x_max <= x_min or y_max <= y_min:
        raise DegenerateGeometryError(
            f"cannot build parametric coordinates for a zero-width box "
            f"({x_min}, {x_max}) x ({y_min}, {y_max})"
        )
    u = (design.points[:, 0] - x_min) / (x_max - x_min)
    v = (design.points[:, 1] - y_min) / (y_max - y_min)
    return u, v


def airfoil_lattice(design: AirfoilDesign) -> ControlLattice:
    """The unperturbed 3x8 control lattice around ``design``."""
    return ControlLattice.regular(
        bounding_box(design.points),
        CONSTANTS.AIRFOIL_LATTICE_COLS,
        CONSTANTS.AIRFOIL_LATTICE_ROWS,
    )


def ffd_deform(
    design: AirfoilDesign,
    lattice: ControlLattice,
    coords: tuple[Array, Array] | None = None,
) -> AirfoilDesign:
    """Deform ``design`` through ``lattice``.

    Args:
        design: Nominal design.
        lattice: Control lattice with 8 columns and 3 rows.
        coords: Parametric coordinates of the nominal design; computed when None.

    Raises:
        ConfigError: If the lattice is not 3x8.
    """
    expected = (CONSTANTS.AIRFOIL_LATTICE_COLS, CONSTANTS.AIRFOIL_LATTICE_ROWS)
    if (lattice.cols, lattice.rows) != expected:
        raise ConfigError(
            f"airfoil lattice must be {expected[1]}x{expected[0]}, "
            f"got {lattice.rows}x{lattice.cols}"
        )
    u, v = coords if coords is not None else parametric_coords(design)
    return AirfoilDesign(deform_points(u, v, lattice))


def perturb_airfoil(
    design: AirfoilDesign, cfg: PerturbationConfig, rng: np.random.Generator
) -> AirfoilDesign:
    """Simulate one fabrication: jitter the y-coordinates of the interior lattice columns."""
    lattice = perturb_lattice(airfoil_lattice(design), cfg.noise_std, rng, axes=(1,))
    return ffd_deform(design, lattice)


def naca_airfoil(camber: float, camber_position: float, thickness: float) -> AirfoilDesign:
    """Four-digit section with a closed trailing edge on cosine-spaced stations.

    Args:
        camber: Maximum camber as a fraction of chord.
        camber_position: Chordwise position of maximum camber.
        thickness: Maximum thickness as a fraction of chord.
    """
    if thickness <= 0.0:
        raise ValidationError(f"thickness must be positive, got {thickness}")
    if not 0.0 < camber_position < 1.0:
        raise ValidationError(f"camber position must lie in (0, 1), got {camber_position}")

    half = CONSTANTS.AIRFOIL_POINTS // 2
    x = 0.5 * (1.0 - np.cos(np.linspace(0.0, np.pi, half + 1)))
    yt = 5.0 * thickness * (
        0.2969 * np.sqrt(x) - 0.1260 * x - 0.3516 * x**2 + 0.2843 * x**3 - 0.1036 * x**4
    )
    m, p = camber, camber_position
    front = x < p
    yc = np.where(
        front,
        m / p**2 * (2.0 * p * x - x**2),
        m / (1.0 - p) ** 2 * ((1.0 - 2.0 * p) + 2.0 * p * x - x**2),
    )
    slope = np.where(front, 2.0 * m / p**2 * (p - x), 2.0 * m / (1.0 - p) ** 2 * (p - x))
    theta = np.arctan(slope)

    upper = np.stack([x - yt * np.sin(theta), yc + yt * np.cos(theta)], axis=1)
    lower = np.stack([x + yt * np.sin(theta), yc - yt * np.cos(theta)], axis=1)
    points = np.concatenate([upper[half:0:-1], lower[:half]], axis=0)
    return AirfoilDesign(points)


def sample_synthetic_airfoil(rng: np.random.Generator) -> tuple[AirfoilDesign, dict[str, float]]:
    """Draw one member of the synthetic family; returns the design and its parameters."""
    params = {
        "camber": float(rng.uniform(*CAMBER_RANGE)),
        "camber_position": float(rng.uniform(*CAMBER_POSITION_RANGE)),
        "thickness": float(rng.uniform(*THICKNESS_RANGE)),
    }
    return naca_airfoil(**params), params


def resample_contour(points: Array, n_points: int) -> Array:
    """Resample a polyline to ``n_points`` points equally spaced in arc length."""
    keep = np.ones(len(points), dtype=bool)
    keep[1:] = np.any(np.diff(points, axis=0) != 0.0, axis=1)
    points = points[keep]
    if len(points) < 3:
        raise ValidationError("a contour needs at least 3 distinct points")
    arc = np.concatenate([[0.0], np.cumsum(np.linalg.norm(np.diff(points, axis=0), axis=1))])
    targets = np.linspace(0.0, arc[-1], n_points)
    return np.stack(
        [np.interp(targets, arc, points[:, 0]), np.interp(targets, arc, points[:, 1])], axis=1
    )


def load_airfoil_file(path: str, n_points: int = CONSTANTS.AIRFOIL_POINTS) -> AirfoilDesign:
    """Read a plain-text coordinate file (one ``x y`` pair per line).

    Lines that do not hold two numbers, such as a name header, are skipped. The
    contour is resampled to ``n_points`` and scaled to unit chord.

    Raises:
        FileNotFoundError: If ``path`` does not exist.
        ValidationError: If fewer than three coordinate pairs were found.
        DegenerateGeometryError: If all x-values coincide.
    """
    rows: list[tuple[float, float]] = []
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            parts = line.split()
            if len(parts) != 2:
                continue
            try:
                rows.append((float(parts[0]), float(parts[1])))
            except ValueError:
                continue
    if len(rows) < 3:
        raise ValidationError(f"{path}: expected at least 3 coordinate pairs, got {len(rows)}")

    points = np.array(rows, dtype=np.float64)
    x_min, x_max = points[:, 0].min(), points[:, 0].max()
    chord = x_max - x_min
    if chord <= 0.0:
        raise DegenerateGeometryError(f"{path}: zero chord")
    points = np.stack([(points[:, 0] - x_min) / chord, points[:, 1] / chord], axis=1)
    logger.debug(f"Loaded {len(rows)} points from {path}")
    return AirfoilDesign(resample_contour(points, n_points))


def is_airfoil_file(filename: str) -> bool:
    return filename.lower().endswith(AIRFOIL_FILE_EXTENSIONS)


def scan_airfoil_files(directory: str) -> list[str]:
    """Recursively find coordinate files in a directory.

    Args:
        directory: Root directory to scan.

    Returns:
        Sorted list of paths to ``.dat``/``.txt`` files.

    Raises:
        FileNotFoundError: If ``directory`` does not exist.
    """
    if not os.path.isdir(directory):
        raise FileNotFoundError(f"airfoil source directory not found: {directory}")
    found: list[str] = []
    for root, dirs, files in os.walk(directory):
        dirs[:] = sorted(d for d in dirs if not d.startswith("."))
        for file in files:
            if is_airfoil_file(file):
                found.append(os.path.join(root, file))
    return sorted(found)
