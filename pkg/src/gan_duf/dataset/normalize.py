"""Affine min/max scaling between design space and model space ([-1, 1])."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import NDArray

Array = NDArray[np.float64]


@dataclass(frozen=True)
class Normalizer:
    """Per-axis (airfoil) or global (metasurface) bounds mapped to -1 and +1."""

    low: Array
    high: Array

    @classmethod
    def fit(cls, kind: str, designs: Array) -> Normalizer:
        """Fit bounds on a stack of designs with shape ``(count, *design_shape)``."""
        if kind == "airfoil":
            flat = designs.reshape(-1, designs.shape[-1])
            return cls(flat.min(axis=0), flat.max(axis=0))
        return cls(np.array(designs.min()), np.array(designs.max()))

    @property
    def _span(self) -> Array:
        span = self.high - self.low
        return np.where(span > 0.0, span, 1.0)

    def normalize(self, design: Array) -> Array:
        return 2.0 * (design - self.low) / self._span - 1.0

    def denormalize(self, design: Array) -> Array:
        return (design + 1.0) * 0.5 * self._span + self.low

    def to_dict(self) -> dict[str, Any]:
        return {"low": np.asarray(self.low).tolist(), "high": np.asarray(self.high).tolist()}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Normalizer:
        return cls(
            np.asarray(data["low"], dtype=np.float64),
            np.asarray(data["high"], dtype=np.float64),
        )
