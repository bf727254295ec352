"""Generator and paired discriminator architectures for both design kinds."""

from __future__ import annotations

import numpy as np

from gan_duf.autodiff import (
    Conv2d,
    Linear,
    Module,
    Parameter,
    Tensor,
    concat,
    downsample2x,
    relu,
    reshape,
    tanh,
    upsample2x,
)
from gan_duf.config.constants import CONSTANTS
from gan_duf.dataset.sources import check_kind
from gan_duf.errors import DimensionError
from gan_duf.hgan.priors import LatentSample, PriorConfig

_CHANNELS = 8
_SEED_SIZE = 16  # metasurface generator starts at 16x16 and upsamples twice
_HIDDEN = 128


def design_shape(kind: str) -> tuple[int, ...]:
    check_kind(kind)
    if kind == "airfoil":
        return (CONSTANTS.AIRFOIL_POINTS, 2)
    return (CONSTANTS.FIELD_SIZE, CONSTANTS.FIELD_SIZE)


class Generator(Module):
    """Maps ``[parent | child | noise]`` rows to designs in normalized space.

    Airfoil: dense 256 -> 512 -> 384, tanh, reshaped to (192, 2).
    Metasurface: dense to 8x16x16, then two upsample + 3x3 convolution stages, tanh.
    """

    def __init__(self, kind: str, prior: PriorConfig, rng: np.random.Generator):
        self.kind = check_kind(kind)
        self.prior = prior
        self.output_shape = design_shape(kind)
        if kind == "airfoil":
            self.layers: list[Module] = [
                Linear(prior.input_dim, 256, rng, "generator.dense1"),
                Linear(256, 512, rng, "generator.dense2"),
                Linear(512, int(np.prod(self.output_shape)), rng, "generator.out"),
            ]
        else:
            seed_width = _CHANNELS * _SEED_SIZE * _SEED_SIZE
            self.layers = [
                Linear(prior.input_dim, seed_width, rng, "generator.dense1"),
                Conv2d(_CHANNELS, _CHANNELS, 3, rng, "generator.conv1"),
                Conv2d(_CHANNELS, 1, 3, rng, "generator.out"),
            ]

    def parameters(self) -> list[Parameter]:
        return [p for layer in self.layers for p in layer.parameters()]

    def forward(self, x: Tensor) -> Tensor:
        if x.ndim != 2 or x.shape[1] != self.prior.input_dim:
            raise DimensionError("generator input", x.shape, (-1, self.prior.input_dim))
        n = x.shape[0]
        first, second, out = self.layers
        if self.kind == "airfoil":
            h = relu(second(relu(first(x))))
            return reshape(tanh(out(h)), (n, *self.output_shape))
        h = reshape(relu(first(x)), (n, _CHANNELS, _SEED_SIZE, _SEED_SIZE))
        h = relu(second(upsample2x(h)))
        h = tanh(out(upsample2x(h)))
        return reshape(h, (n, *self.output_shape))


def pair_input(kind: str, nominal: Tensor, fabricated: Tensor) -> Tensor:
    """Join a (nominal, fabricated) batch into one discriminator input, nominal first."""
    if nominal.shape != fabricated.shape:
        raise DimensionError("design pair", nominal.shape, fabricated.shape)
    expected = design_shape(kind)
    if nominal.shape[1:] != expected:
        raise DimensionError("design pair", nominal.shape, (nominal.shape[0], *expected))
    n = nominal.shape[0]
    if kind == "airfoil":
        width = int(np.prod(expected))
        return concat([reshape(nominal, (n, width)), reshape(fabricated, (n, width))], axis=1)
    channel_shape = (n, 1, *expected)
    return concat([reshape(nominal, channel_shape), reshape(fabricated, channel_shape)], axis=1)


class Discriminator(Module):
    """Shared trunk over the joint pair with a real/fake logit head and a Q mean head."""

    def __init__(self, kind: str, prior: PriorConfig, rng: np.random.Generator):
        self.kind = check_kind(kind)
        self.prior = prior
        if kind == "airfoil":
            width = 2 * int(np.prod(design_shape(kind)))
            self.trunk: list[Module] = [
                Linear(width, 512, rng, "discriminator.dense1"),
                Linear(512, 256, rng, "discriminator.dense2"),
            ]
            features = 256
        else:
            reduced = CONSTANTS.FIELD_SIZE // 4
            self.trunk = [
                Conv2d(2, _CHANNELS, 3, rng, "discriminator.conv1"),
                Conv2d(_CHANNELS, _CHANNELS, 3, rng, "discriminator.conv2"),
                Linear(_CHANNELS * reduced * reduced, _HIDDEN, rng, "discriminator.dense1"),
            ]
            features = _HIDDEN
        self.d_head = Linear(features, 1, rng, "discriminator.d_head")
        self.q_head = Linear(features, prior.code_dim, rng, "discriminator.q_head")

    def parameters(self) -> list[Parameter]:
        params = [p for layer in self.trunk for p in layer.parameters()]
        return params + self.d_head.parameters() + self.q_head.parameters()

    def forward(self, x: Tensor) -> Tensor:
        """Trunk features of a joined pair from :func:`pair_input`."""
        if self.kind == "airfoil":
            first, second = self.trunk
            return relu(second(relu(first(x))))
        conv1, conv2, dense = self.trunk
        h = downsample2x(relu(conv1(x)))
        h = downsample2x(relu(conv2(h)))
        return relu(dense(reshape(h, (x.shape[0], -1))))

    def heads(self, nominal: Tensor, fabricated: Tensor) -> tuple[Tensor, Tensor]:
        """Return the real/fake logits ``(B, 1)`` and Q means ``(B, parent+child)``."""
        h = self(pair_input(self.kind, nominal, fabricated))
        return self.d_head(h), self.q_head(h)


def fake_pair(generator: Generator, sample: LatentSample) -> tuple[Tensor, Tensor]:
    """Generate ``(G(c_p, 0, z), G(c_p, c_c, z))``; the only path to nominal designs."""
    sample.check(generator.prior)
    nominal = generator(Tensor(sample.nominal().concatenated()))
    fabricated = generator(Tensor(sample.concatenated()))
    return nominal, fabricated
