"""Adversarial and mutual-information losses of the hierarchical GAN."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from gan_duf.autodiff import Tensor, clip, log, mean, mul, sigmoid, sub, sum_
from gan_duf.config.constants import CONSTANTS
from gan_duf.dataset.store import PairBatch
from gan_duf.errors import DimensionError
from gan_duf.hgan.networks import Discriminator

_EPS = CONSTANTS.PROB_CLAMP


@dataclass
class GeneratedPairs:
    """Generator output ``(G(c_p, 0, z), G(c_p, c_c, z))`` with the ``[parent | child]`` codes."""

    nominal: Tensor
    fabricated: Tensor
    codes: Tensor


@dataclass
class LossTerms:
    """Scalar loss tensors for one batch."""

    loss_d: Tensor
    loss_g: Tensor
    info: Tensor


def _safe_log(prob: Tensor) -> Tensor:
    return log(clip(prob, _EPS, 1.0 - _EPS))


def discriminator_loss(real_prob: Tensor, fake_prob: Tensor) -> Tensor:
    """``-mean[log D(real) + log(1 - D(fake))]``."""
    return -mean(_safe_log(real_prob) + _safe_log(1.0 - fake_prob))


def generator_loss(fake_prob: Tensor) -> Tensor:
    """Non-saturating ``-mean log D(fake)``."""
    return -mean(_safe_log(fake_prob))


def info_nll(q_mean: Tensor, codes: Tensor) -> Tensor:
    """Mean negative log-density of ``codes`` under N(q_mean, I)."""
    if q_mean.shape != codes.shape:
        raise DimensionError("info loss", q_mean.shape, codes.shape)
    diff = sub(codes, q_mean)
    per_row = mul(sum_(diff * diff, axis=1), 0.5)
    return mean(per_row) + 0.5 * codes.shape[1] * float(np.log(2.0 * np.pi))


def pair_losses(
    real_logit: Tensor,
    fake_logit: Tensor,
    q_mean: Tensor,
    codes: Tensor,
    lambda_info: float = CONSTANTS.LAMBDA_INFO,
) -> LossTerms:
    """Both players' losses from discriminator logits and Q means."""
    fake_prob = sigmoid(fake_logit)
    info = info_nll(q_mean, codes)
    return LossTerms(
        loss_d=discriminator_loss(sigmoid(real_logit), fake_prob),
        loss_g=generator_loss(fake_prob) + lambda_info * info,
        info=info,
    )


def hgan_loss(
    discriminator: Discriminator,
    batch: PairBatch,
    generated: GeneratedPairs,
    lambda_info: float = CONSTANTS.LAMBDA_INFO,
) -> LossTerms:
    """Both players' losses for a real batch and a generated batch.

    ``loss_d`` is the pair-GAN discriminator loss; ``loss_g`` is the
    non-saturating generator loss plus ``lambda_info`` times the info term.
    """
    real_logit, _ = discriminator.heads(Tensor(batch.nominal), Tensor(batch.fabricated))
    fake_logit, q_mean = discriminator.heads(generated.nominal, generated.fabricated)
    return pair_losses(real_logit, fake_logit, q_mean, generated.codes, lambda_info)
