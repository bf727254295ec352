"""Alternating discriminator/generator training of the hierarchical GAN."""

from __future__ import annotations

import logging
import math
import os
from dataclasses import asdict, dataclass
from typing import Any

import numpy as np

from gan_duf.autodiff import Adam, AdamState, Tensor, backward, no_grad, reset_tape
from gan_duf.config.constants import CONSTANTS
from gan_duf.dataset.store import BatchSampler, DesignDataset
from gan_duf.errors import ConfigError, TrainingDivergedError
from gan_duf.hgan.checkpoint import FINAL_CHECKPOINT, ModelCheckpoint, save_checkpoint
from gan_duf.hgan.losses import GeneratedPairs, hgan_loss
from gan_duf.hgan.networks import fake_pair
from gan_duf.hgan.priors import PriorConfig, sample_latents
from gan_duf.reports import LOSS_COLUMNS, loss_rows, write_csv
from gan_duf.utils.rng import derive_seed

logger = logging.getLogger(__name__)

LOSSES_NAME = "losses.csv"

# Stream keys for seed derivation
_GENERATOR_INIT = 10
_DISCRIMINATOR_INIT = 11
_BATCHES = 12


@dataclass(frozen=True)
class TrainConfig:
    """Optimization settings for :func:`train`."""

    steps: int = CONSTANTS.AIRFOIL_STEPS
    batch_size: int = CONSTANTS.BATCH_SIZE
    lr_g: float = CONSTANTS.LEARNING_RATE
    lr_d: float = CONSTANTS.LEARNING_RATE
    lambda_info: float = CONSTANTS.LAMBDA_INFO
    seed: int = 0
    checkpoint_every: int = 0
    log_every: int = 100

    def __post_init__(self) -> None:
        if self.steps < 0:
            raise ConfigError(f"steps must be >= 0, got {self.steps}")
        if self.batch_size < 1:
            raise ConfigError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.lr_g <= 0.0 or self.lr_d <= 0.0:
            raise ConfigError(f"learning rates must be positive, got {self.lr_g}, {self.lr_d}")
        if self.lambda_info < 0.0:
            raise ConfigError(f"lambda_info must be >= 0, got {self.lambda_info}")
        if self.checkpoint_every < 0 or self.log_every < 1:
            raise ConfigError("checkpoint_every must be >= 0 and log_every >= 1")

    @classmethod
    def for_kind(cls, kind: str, **overrides: Any) -> TrainConfig:
        steps = CONSTANTS.AIRFOIL_STEPS if kind == "airfoil" else CONSTANTS.METASURFACE_STEPS
        return cls(**{"steps": steps, **overrides})

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> TrainConfig:
        known = {k: data[k] for k in cls.__dataclass_fields__ if k in data}
        return cls(**known)


def _record(loss: Tensor) -> float:
    return float(loss.item())


def _check_finite(step: int, last_checkpoint: str | None, **losses: float) -> None:
    """Abort before any parameter update consumes a non-finite loss."""
    if all(math.isfinite(v) for v in losses.values()):
        return
    reset_tape()
    detail = ", ".join(f"{k}={v}" for k, v in losses.items())
    logger.error(f"Training diverged at step {step}: {detail}")
    raise TrainingDivergedError(step, detail, last_checkpoint)


def train(
    dataset: DesignDataset,
    cfg: TrainConfig,
    prior: PriorConfig,
    output_dir: str | None = None,
) -> ModelCheckpoint:
    """Train a generator/discriminator pair on ``dataset``.

    Each step draws one batch of real pairs and one batch of latent codes,
    updates the discriminator (and Q head) on ``loss_d + lambda * info``, then
    updates the generator on ``loss_g``.

    Args:
        dataset: Paired nominal/fabricated designs.
        cfg: Optimization settings; ``cfg.seed`` fixes initialization and batches.
        prior: Latent dimensions.
        output_dir: Receives ``losses.csv`` and checkpoints when given.

    Returns:
        The trained model (also saved as ``checkpoint_final`` when ``output_dir`` is set).

    Raises:
        TrainingDivergedError: If a loss becomes non-finite.
    """
    ckpt = ModelCheckpoint.initialize(
        dataset.kind,
        prior,
        np.random.default_rng(derive_seed(cfg.seed, _GENERATOR_INIT)),
        np.random.default_rng(derive_seed(cfg.seed, _DISCRIMINATOR_INIT)),
        train_config=cfg.to_dict(),
        normalizer=dataset.normalizer,
    )
    rng = np.random.default_rng(derive_seed(cfg.seed, _BATCHES))
    sampler = BatchSampler(dataset)
    generator, discriminator = ckpt.generator, ckpt.discriminator
    g_opt = Adam(generator.parameters(), AdamState(learning_rate=cfg.lr_g))
    d_opt = Adam(discriminator.parameters(), AdamState(learning_rate=cfg.lr_d))
    last_checkpoint: str | None = None
    lam = cfg.lambda_info

    logger.info(
        f"Training {dataset.kind} model: {cfg.steps} steps, batch {cfg.batch_size}, "
        f"parent {prior.parent_dim}, child {prior.child_dim}, lambda {lam}"
    )
    reset_tape()
    for step in range(1, cfg.steps + 1):
        batch = sampler.sample(cfg.batch_size, rng)
        latents = sample_latents(prior, cfg.batch_size, rng)
        codes = Tensor(np.concatenate([latents.parent, latents.child], axis=1))

        # Discriminator and Q head
        with no_grad():
            fake_nom, fake_fab = fake_pair(generator, latents)
        d_opt.zero_grad()
        terms = hgan_loss(discriminator, batch, GeneratedPairs(fake_nom, fake_fab, codes), lam)
        loss_d = _record(terms.loss_d)
        _check_finite(step, last_checkpoint, loss_d=loss_d, info=_record(terms.info))
        backward(terms.loss_d + lam * terms.info)
        d_opt.step()

        # Generator, non-saturating loss plus the info term
        g_opt.zero_grad()
        fake_nom, fake_fab = fake_pair(generator, latents)
        terms = hgan_loss(discriminator, batch, GeneratedPairs(fake_nom, fake_fab, codes), lam)
        loss_g, info = _record(terms.loss_g), _record(terms.info)
        _check_finite(step, last_checkpoint, loss_g=loss_g, info=info)
        backward(terms.loss_g)
        g_opt.step()

        ckpt.step = step
        ckpt.loss_history.append({"step": step, "loss_d": loss_d, "loss_g": loss_g, "info": info})
        if step % cfg.log_every == 0 or step == cfg.steps:
            logger.info(
                f"Step {step}/{cfg.steps}: loss_d={loss_d:.4f} loss_g={loss_g:.4f} info={info:.4f}"
            )
        if output_dir and cfg.checkpoint_every and step % cfg.checkpoint_every == 0:
            last_checkpoint = save_checkpoint(ckpt, output_dir, f"checkpoint_{step}")

    if output_dir:
        save_checkpoint(ckpt, output_dir, FINAL_CHECKPOINT)
        write_csv(
            os.path.join(output_dir, LOSSES_NAME), LOSS_COLUMNS, loss_rows(ckpt.loss_history)
        )
    return ckpt
