"""Latent priors: uniform parent codes, Gaussian child codes and noise."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import NDArray

from gan_duf.config.constants import CONSTANTS
from gan_duf.errors import ConfigError, DimensionError

Array = NDArray[np.float64]


@dataclass(frozen=True)
class PriorConfig:
    """Latent dimensions; child codes and noise are N(0, scale * I)."""

    parent_dim: int
    child_dim: int
    noise_dim: int = CONSTANTS.NOISE_DIM
    scale: float = CONSTANTS.PRIOR_SCALE

    def __post_init__(self) -> None:
        for name in ("parent_dim", "child_dim", "noise_dim"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1, got {getattr(self, name)}")
        if self.scale <= 0.0:
            raise ConfigError(f"prior scale must be positive, got {self.scale}")

    @property
    def code_dim(self) -> int:
        return self.parent_dim + self.child_dim

    @property
    def input_dim(self) -> int:
        return self.parent_dim + self.child_dim + self.noise_dim

    @classmethod
    def for_kind(cls, kind: str) -> PriorConfig:
        if kind == "airfoil":
            return cls(CONSTANTS.AIRFOIL_PARENT_DIM, CONSTANTS.AIRFOIL_CHILD_DIM)
        if kind == "metasurface":
            return cls(CONSTANTS.METASURFACE_PARENT_DIM, CONSTANTS.METASURFACE_CHILD_DIM)
        raise ConfigError(f"unknown design kind '{kind}'")

    def to_dict(self) -> dict[str, Any]:
        return {
            "parent_dim": self.parent_dim,
            "child_dim": self.child_dim,
            "noise_dim": self.noise_dim,
            "scale": self.scale,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> PriorConfig:
        return cls(
            int(data["parent_dim"]),
            int(data["child_dim"]),
            int(data["noise_dim"]),
            float(data["scale"]),
        )


@dataclass(frozen=True)
class LatentSample:
    """A batch of generator inputs, one row per design."""

    parent: Array
    child: Array
    noise: Array

    @property
    def size(self) -> int:
        return int(self.parent.shape[0])

    def check(self, prior: PriorConfig) -> None:
        """Raise DimensionError unless the widths match ``prior``."""
        expected = (prior.parent_dim, prior.child_dim, prior.noise_dim)
        found = (self.parent.shape[-1], self.child.shape[-1], self.noise.shape[-1])
        rows = {self.parent.shape[0], self.child.shape[0], self.noise.shape[0]}
        if found != expected or len(rows) != 1 or self.parent.ndim != 2:
            raise DimensionError("latent sample", self.parent.shape, (len(rows), *expected))

    def nominal(self) -> LatentSample:
        """The same codes with the child code zeroed."""
        return LatentSample(self.parent, np.zeros_like(self.child), self.noise)

    def concatenated(self) -> Array:
        return np.concatenate([self.parent, self.child, self.noise], axis=1)

    @classmethod
    def from_parent(
        cls,
        prior: PriorConfig,
        parent: Array,
        child: Array | None = None,
        noise: Array | None = None,
    ) -> LatentSample:
        """Build a sample around parent codes; missing parts are zero."""
        parent = np.atleast_2d(np.asarray(parent, dtype=np.float64))
        n = parent.shape[0]
        child = np.zeros((n, prior.child_dim)) if child is None else np.atleast_2d(child)
        noise = np.zeros((n, prior.noise_dim)) if noise is None else np.atleast_2d(noise)
        sample = cls(
            parent, np.asarray(child, dtype=np.float64), np.asarray(noise, dtype=np.float64)
        )
        sample.check(prior)
        return sample


def sample_child(prior: PriorConfig, n: int, rng: np.random.Generator) -> Array:
    return rng.normal(0.0, np.sqrt(prior.scale), size=(n, prior.child_dim))


def sample_noise(prior: PriorConfig, n: int, rng: np.random.Generator) -> Array:
    return rng.normal(0.0, np.sqrt(prior.scale), size=(n, prior.noise_dim))


def sample_latents(prior: PriorConfig, n: int, rng: np.random.Generator) -> LatentSample:
    """Draw ``n`` full latent rows from the priors (parent, then child, then noise)."""
    parent = rng.uniform(0.0, 1.0, size=(n, prior.parent_dim))
    return LatentSample(parent, sample_child(prior, n, rng), sample_noise(prior, n, rng))
