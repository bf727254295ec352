"""Hierarchical GAN: priors, networks, losses, training and checkpoints."""

from gan_duf.hgan.checkpoint import (
    FINAL_CHECKPOINT,
    ModelCheckpoint,
    load_checkpoint,
    save_checkpoint,
)
from gan_duf.hgan.inference import (
    DiscriminatorOutput,
    discriminate,
    generate,
    generate_pair,
    to_design_space,
)
from gan_duf.hgan.losses import (
    GeneratedPairs,
    LossTerms,
    discriminator_loss,
    generator_loss,
    hgan_loss,
    info_nll,
    pair_losses,
)
from gan_duf.hgan.networks import Discriminator, Generator, design_shape, fake_pair, pair_input
from gan_duf.hgan.priors import LatentSample, PriorConfig, sample_latents
from gan_duf.hgan.trainer import LOSSES_NAME, TrainConfig, train

__all__ = [
    "FINAL_CHECKPOINT",
    "LOSSES_NAME",
    "Discriminator",
    "DiscriminatorOutput",
    "GeneratedPairs",
    "Generator",
    "LatentSample",
    "LossTerms",
    "ModelCheckpoint",
    "PriorConfig",
    "TrainConfig",
    "design_shape",
    "discriminate",
    "discriminator_loss",
    "fake_pair",
    "generate",
    "generate_pair",
    "generator_loss",
    "hgan_loss",
    "info_nll",
    "load_checkpoint",
    "pair_input",
    "pair_losses",
    "sample_latents",
    "save_checkpoint",
    "to_design_space",
    "train",
]
