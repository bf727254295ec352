"""Evaluator interface and the infeasibility marker."""

from __future__ import annotations

import math
from collections.abc import Sequence
from typing import Any, Protocol

import numpy as np

from gan_duf.autodiff.tensor import Array

INFEASIBLE = float("-inf")


def is_infeasible(value: float) -> bool:
    """True for the infeasibility marker and for NaN results."""
    return math.isnan(value) or value == INFEASIBLE


class ObjectiveEvaluator(Protocol):
    """Scores one design in design space; larger is better."""

    kind: str
    name: str

    def __call__(self, design: Array) -> float: ...

    def describe(self) -> dict[str, Any]: ...


def evaluate_many(evaluator: ObjectiveEvaluator, designs: Sequence[Array] | Array) -> Array:
    """Evaluate designs in index order; evaluators with a ``map`` method may batch."""
    mapper = getattr(evaluator, "map", None)
    if mapper is not None:
        return np.asarray(mapper(list(designs)), dtype=np.float64)
    return np.array([evaluator(design) for design in designs], dtype=np.float64)
