"""Metasurface unit cells as 64x64 level-set fields.

Nominal cells are convex blends of three motif fields (I-beam, cross, square
ring). Fabrication warps the pixel grid with a perturbed 12x12 FFD lattice and
smooths the result with a Gaussian filter.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import ndimage

from gan_duf.config.constants import CONSTANTS
from gan_duf.errors import ValidationError
from gan_duf.geometry.ffd import (
    Array,
    ControlLattice,
    PerturbationConfig,
    bernstein_basis,
    perturb_lattice,
)

MOTIF_NAMES = ("i_beam", "cross", "square_ring")
WEIGHT_TOLERANCE = 1e-9

Box = tuple[tuple[float, float], tuple[float, float]]

# (center, half-size) pairs
_I_BEAM_BOXES: tuple[Box, ...] = (
    ((0.0, 0.55), (0.6, 0.12)),
    ((0.0, -0.55), (0.6, 0.12)),
    ((0.0, 0.0), (0.12, 0.55)),
)
_CROSS_BOXES: tuple[Box, ...] = (((0.0, 0.0), (0.7, 0.14)), ((0.0, 0.0), (0.14, 0.7)))
_RING_OUTER = 0.7
_RING_INNER = 0.5


@dataclass(frozen=True)
class LevelSetField:
    """A 64x64 level-set; cells with ``values > threshold`` are solid."""

    values: Array
    threshold: float = CONSTANTS.LEVEL_SET_THRESHOLD

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64)
        expected = (CONSTANTS.FIELD_SIZE, CONSTANTS.FIELD_SIZE)
        if values.shape != expected:
            raise ValidationError(f"field must have shape {expected}, got {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValidationError("level-set values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def binary(self) -> Array:
        """The thresholded 0/1 image."""
        return (self.values > self.threshold).astype(np.float64)


def _cell_grid() -> tuple[Array, Array]:
    axis = np.linspace(-1.0, 1.0, CONSTANTS.FIELD_SIZE)
    rows, cols = np.meshgrid(axis, axis, indexing="ij")
    return cols, rows


def _box_sdf(x: Array, y: Array, center: tuple[float, float], half: tuple[float, float]) -> Array:
    qx = np.abs(x - center[0]) - half[0]
    qy = np.abs(y - center[1]) - half[1]
    outside = np.hypot(np.maximum(qx, 0.0), np.maximum(qy, 0.0))
    return outside + np.minimum(np.maximum(qx, qy), 0.0)


def _union(x: Array, y: Array, boxes: tuple[Box, ...]) -> Array:
    return np.max([-_box_sdf(x, y, c, h) for c, h in boxes], axis=0)


@lru_cache(maxsize=1)
def _motif_stack() -> Array:
    x, y = _cell_grid()
    origin = (0.0, 0.0)
    ring = np.minimum(
        -_box_sdf(x, y, origin, (_RING_OUTER, _RING_OUTER)),
        _box_sdf(x, y, origin, (_RING_INNER, _RING_INNER)),
    )
    stack = np.stack([_union(x, y, _I_BEAM_BOXES), _union(x, y, _CROSS_BOXES), ring])
    stack.setflags(write=False)
    return stack


def motif_fields() -> Array:
    """The three canonical motif fields, shape ``(3, 64, 64)``, positive inside."""
    return _motif_stack().copy()


def _check_weights(weights: Array) -> None:
    if weights.shape != (len(MOTIF_NAMES),):
        raise ValidationError(f"expected {len(MOTIF_NAMES)} motif weights, got {weights.shape}")
    if np.any(weights < -WEIGHT_TOLERANCE) or abs(weights.sum() - 1.0) > WEIGHT_TOLERANCE:
        raise ValidationError(f"motif weights must be nonnegative and sum to 1, got {weights}")


def synth_metasurface_nominal(
    motif_weights: Array | None = None,
    rng: np.random.Generator | None = None,
    motifs: Array | None = None,
) -> LevelSetField:
    """Blend the motif fields with convex weights.

    Args:
        motif_weights: Three nonnegative weights summing to 1; drawn from a flat
            Dirichlet distribution with ``rng`` when None.
        rng: Random generator used when weights are drawn.
        motifs: Motif stack to blend; defaults to :func:`motif_fields`.

    Raises:
        ValidationError: If the weights are not a convex combination.
    """
    if motif_weights is None:
        if rng is None:
            raise ValidationError("either motif_weights or rng must be given")
        motif_weights = rng.dirichlet(np.ones(len(MOTIF_NAMES)))
    weights = np.asarray(motif_weights, dtype=np.float64)
    _check_weights(weights)
    stack = _motif_stack() if motifs is None else motifs
    field = np.zeros(stack.shape[1:])
    for w, motif in zip(weights, stack):
        field = field + w * motif
    return LevelSetField(field)


@lru_cache(maxsize=1)
def _grid_basis() -> Array:
    size = CONSTANTS.FIELD_SIZE
    degree = CONSTANTS.METASURFACE_LATTICE - 1
    u = np.arange(size) / (size - 1)
    basis = bernstein_basis(degree, u)
    basis.setflags(write=False)
    return basis


def metasurface_lattice() -> ControlLattice:
    """The unperturbed 12x12 lattice over the pixel grid; x runs along columns."""
    last = float(CONSTANTS.FIELD_SIZE - 1)
    n = CONSTANTS.METASURFACE_LATTICE
    return ControlLattice.regular((0.0, last, 0.0, last), n, n)


def lattice_displacement(offsets: Array) -> Array:
    """Per-pixel displacement ``(2, 64, 64)`` as (row, col) components of the FFD offsets.

    ``offsets`` has the lattice shape ``(12, 12, 2)`` with (x, y) components.
    """
    basis = _grid_basis()
    # pixel (r, c): u from the column index, v from the row index
    dx = np.einsum("cl,rm,lm->rc", basis, basis, offsets[..., 0])
    dy = np.einsum("cl,rm,lm->rc", basis, basis, offsets[..., 1])
    return np.stack([dy, dx])


def gaussian_smooth(values: Array, filter_std: float) -> Array:
    """Gaussian filter with reflective boundaries; the identity when ``filter_std`` is 0."""
    if filter_std <= 0.0:
        return values.copy()
    return ndimage.gaussian_filter(values, sigma=filter_std, mode="reflect")


def deform_field(field: LevelSetField, offsets: Array, filter_std: float) -> LevelSetField:
    """Warp ``field`` by lattice ``offsets`` (bilinear resampling), then smooth it."""
    size = CONSTANTS.FIELD_SIZE
    grid = np.indices((size, size), dtype=np.float64)
    source = grid - lattice_displacement(offsets)
    warped = ndimage.map_coordinates(field.values, source, order=1, mode="nearest")
    return LevelSetField(gaussian_smooth(warped, filter_std), field.threshold)


def perturb_metasurface(
    field: LevelSetField, cfg: PerturbationConfig, rng: np.random.Generator
) -> LevelSetField:
    """Simulate one fabrication: every control point moves in both axes."""
    base = metasurface_lattice()
    moved = perturb_lattice(base, cfg.noise_std, rng, axes=(0, 1), pin_end_columns=False)
    return deform_field(field, moved.points - base.points, cfg.filter_std)
