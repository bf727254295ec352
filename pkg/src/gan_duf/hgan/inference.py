"""Forward passes of a trained model without recording gradients."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from gan_duf.autodiff import Tensor, no_grad, sigmoid
from gan_duf.autodiff.tensor import Array
from gan_duf.errors import DimensionError
from gan_duf.hgan.checkpoint import ModelCheckpoint
from gan_duf.hgan.networks import design_shape, fake_pair
from gan_duf.hgan.priors import LatentSample


@dataclass
class DiscriminatorOutput:
    """Per-row probability that a pair is real, and Q's Gaussian over the codes."""

    probability: Array
    q_mean: Array
    q_log_var: Array


def generate(ckpt: ModelCheckpoint, sample: LatentSample) -> Array:
    """Designs ``G(c_p, c_c, z)`` in normalized space, shape ``(B, *design_shape)``."""
    sample.check(ckpt.prior)
    with no_grad():
        return ckpt.generator(Tensor(sample.concatenated())).numpy()


def generate_pair(ckpt: ModelCheckpoint, sample: LatentSample) -> tuple[Array, Array]:
    """The nominal and fabricated designs for ``sample``, as built during training."""
    with no_grad():
        nominal, fabricated = fake_pair(ckpt.generator, sample)
    return nominal.numpy(), fabricated.numpy()


def to_design_space(ckpt: ModelCheckpoint, designs: Array) -> Array:
    """Undo dataset normalization (identity when the checkpoint carries none)."""
    if ckpt.normalizer is None:
        return designs
    return ckpt.normalizer.denormalize(designs)


def discriminate(ckpt: ModelCheckpoint, x_nom: Array, x_fab: Array) -> DiscriminatorOutput:
    """Score (nominal, fabricated) pairs given in normalized space.

    A single design of shape ``design_shape`` is treated as a batch of one.
    """
    expected = design_shape(ckpt.kind)
    x_nom = np.asarray(x_nom, dtype=np.float64)
    x_fab = np.asarray(x_fab, dtype=np.float64)
    if x_nom.shape != x_fab.shape:
        raise DimensionError("discriminate", x_nom.shape, x_fab.shape)
    if x_nom.shape == expected:
        x_nom, x_fab = x_nom[None], x_fab[None]
    if x_nom.shape[1:] != expected:
        raise DimensionError("discriminate", x_nom.shape, expected)
    with no_grad():
        logit, q_mean = ckpt.discriminator.heads(Tensor(x_nom), Tensor(x_fab))
        probability = sigmoid(logit).numpy()[:, 0]
    means = q_mean.numpy()
    return DiscriminatorOutput(probability, means, np.zeros_like(means))
