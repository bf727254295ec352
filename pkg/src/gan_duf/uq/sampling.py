"""Conditional sampling of fabricated designs for one parent code."""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike

from gan_duf.autodiff.tensor import Array
from gan_duf.errors import ConfigError
from gan_duf.hgan.checkpoint import ModelCheckpoint
from gan_duf.hgan.inference import generate, to_design_space
from gan_duf.hgan.networks import design_shape
from gan_duf.hgan.priors import LatentSample, sample_child, sample_noise


def nominal_design(ckpt: ModelCheckpoint, parent: ArrayLike, design_space: bool = True) -> Array:
    """``G(c_p, 0, 0)`` for one parent code."""
    sample = LatentSample.from_parent(ckpt.prior, np.asarray(parent, dtype=np.float64))
    out = generate(ckpt, sample)[0]
    return to_design_space(ckpt, out) if design_space else out


def draw_child_codes(ckpt: ModelCheckpoint, n: int, rng: np.random.Generator) -> Array:
    """Child codes from the prior; pass the result to several parents for common random numbers."""
    return sample_child(ckpt.prior, n, rng)


def sample_fabricated(
    ckpt: ModelCheckpoint,
    parent: ArrayLike,
    n: int,
    rng: np.random.Generator,
    draw_noise: bool = False,
    child: Array | None = None,
    design_space: bool = True,
) -> Array:
    """Draw ``n`` fabricated designs ``G(c_p, c_c, z)`` for a fixed parent code.

    Args:
        ckpt: Trained model.
        parent: Parent code in [0, 1]^parent_dim.
        n: Number of designs; 0 gives an empty array.
        rng: Source of the child codes (and noise when ``draw_noise``).
        draw_noise: Draw z from its prior instead of z = 0.
        child: Pre-drawn child codes ``(n, child_dim)``; ``rng`` is then not used for them.
        design_space: Map the outputs back through the dataset normalizer.

    Returns:
        Array of shape ``(n, *design_shape)``.
    """
    if n < 0:
        raise ConfigError(f"sample count must be >= 0, got {n}")
    if n == 0:
        return np.empty((0, *design_shape(ckpt.kind)))
    codes = draw_child_codes(ckpt, n, rng) if child is None else np.asarray(child)
    if codes.shape[0] != n:
        raise ConfigError(f"got {codes.shape[0]} child codes for {n} samples")
    noise = sample_noise(ckpt.prior, n, rng) if draw_noise else None
    parents = np.repeat(np.atleast_2d(np.asarray(parent, dtype=np.float64)), n, axis=0)
    sample = LatentSample.from_parent(ckpt.prior, parents, codes, noise)
    out = generate(ckpt, sample)
    return to_design_space(ckpt, out) if design_space else out
