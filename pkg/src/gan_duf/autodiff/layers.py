"""Affine, convolution and fixed resampling layers built on the tensor primitives."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from gan_duf.autodiff.optim import Parameter
from gan_duf.autodiff.tensor import Array, Tensor, im2col, matmul, reshape, transpose


class Module:
    """Base class: subclasses list their parameters in a fixed order."""

    def parameters(self) -> list[Parameter]:
        return []

    def __call__(self, x: Tensor) -> Tensor:
        return self.forward(x)

    def forward(self, x: Tensor) -> Tensor:
        raise NotImplementedError


def _glorot(rng: np.random.Generator, fan_in: int, fan_out: int, shape: tuple[int, ...]) -> Array:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape)


class Linear(Module):
    """``y = x W + b`` with Glorot-uniform weights and zero bias."""

    def __init__(self, in_features: int, out_features: int, rng: np.random.Generator, name: str):
        self.weight = Parameter(
            _glorot(rng, in_features, out_features, (in_features, out_features)), f"{name}.weight"
        )
        self.bias = Parameter(np.zeros(out_features), f"{name}.bias")

    def parameters(self) -> list[Parameter]:
        return [self.weight, self.bias]

    def forward(self, x: Tensor) -> Tensor:
        return matmul(x, self.weight) + self.bias


class Conv2d(Module):
    """Same-padding, stride-1 convolution on ``(N, C, H, W)`` via im2col and a matrix product."""

    def __init__(
        self,
        in_channels: int,
        out_channels: int,
        kernel: int,
        rng: np.random.Generator,
        name: str,
    ):
        self.kernel = kernel
        fan_in = in_channels * kernel * kernel
        self.weight = Parameter(
            _glorot(rng, fan_in, out_channels * kernel * kernel, (fan_in, out_channels)),
            f"{name}.weight",
        )
        self.bias = Parameter(np.zeros(out_channels), f"{name}.bias")

    def parameters(self) -> list[Parameter]:
        return [self.weight, self.bias]

    def forward(self, x: Tensor) -> Tensor:
        n, _, h, w = x.shape
        cols = im2col(x, self.kernel, self.kernel // 2)
        out = matmul(cols, self.weight) + self.bias
        out = reshape(out, (n, h, w, self.weight.shape[1]))
        return transpose(out, (0, 3, 1, 2))


@lru_cache(maxsize=16)
def _upsample_matrix(size: int) -> Array:
    """Linear interpolation from ``size`` to ``2*size`` samples (half-pixel centers, clamped)."""
    matrix = np.zeros((2 * size, size))
    for i in range(2 * size):
        pos = min(max((i + 0.5) / 2.0 - 0.5, 0.0), size - 1.0)
        lo = int(np.floor(pos))
        hi = min(lo + 1, size - 1)
        frac = pos - lo
        matrix[i, lo] += 1.0 - frac
        matrix[i, hi] += frac
    matrix.setflags(write=False)
    return matrix


@lru_cache(maxsize=16)
def _downsample_matrix(size: int) -> Array:
    """2:1 average pooling along one axis."""
    matrix = np.zeros((size // 2, size))
    for i in range(size // 2):
        matrix[i, 2 * i] = 0.5
        matrix[i, 2 * i + 1] = 0.5
    matrix.setflags(write=False)
    return matrix


def upsample2x(x: Tensor) -> Tensor:
    """Bilinear x2 upsampling of the last two axes."""
    rows = Tensor(_upsample_matrix(x.shape[-2]))
    cols = Tensor(_upsample_matrix(x.shape[-1]).T)
    return matmul(matmul(rows, x), cols)


def downsample2x(x: Tensor) -> Tensor:
    """2x2 average pooling of the last two axes."""
    rows = Tensor(_downsample_matrix(x.shape[-2]))
    cols = Tensor(_downsample_matrix(x.shape[-1]).T)
    return matmul(matmul(rows, x), cols)
