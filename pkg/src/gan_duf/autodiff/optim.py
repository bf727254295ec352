"""Adam optimizer over named parameters."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from gan_duf.autodiff.tensor import Array, Tensor
from gan_duf.config.constants import CONSTANTS
from gan_duf.errors import ConfigError, MissingGradientError


class Parameter(Tensor):
    """A named leaf tensor that always requires gradients."""

    def __init__(self, data: Any, name: str):
        super().__init__(data, requires_grad=True, name=name)
        self.name: str = name


@dataclass
class AdamState:
    """Step counter, hyperparameters and per-parameter moment buffers."""

    learning_rate: float = CONSTANTS.LEARNING_RATE
    beta1: float = CONSTANTS.ADAM_BETA1
    beta2: float = CONSTANTS.ADAM_BETA2
    epsilon: float = CONSTANTS.ADAM_EPSILON
    step: int = 0
    first_moment: dict[str, Array] = field(default_factory=dict)
    second_moment: dict[str, Array] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not 0.0 < self.beta1 < 1.0 or not 0.0 < self.beta2 < 1.0:
            raise ConfigError(f"Adam betas must lie in (0, 1), got {self.beta1}, {self.beta2}")
        if self.epsilon <= 0.0:
            raise ConfigError(f"Adam epsilon must be positive, got {self.epsilon}")
        if self.learning_rate <= 0.0:
            raise ConfigError(f"learning rate must be positive, got {self.learning_rate}")


def adam_step(params: Sequence[Parameter], state: AdamState) -> AdamState:
    """Apply one bias-corrected Adam update to every parameter in place.

    Gradients are checked for all parameters before any value changes.

    Raises:
        MissingGradientError: If a parameter has no gradient.
    """
    for p in params:
        if p.grad is None:
            raise MissingGradientError(p.name)

    state.step += 1
    t = state.step
    correction1 = 1.0 - state.beta1**t
    correction2 = 1.0 - state.beta2**t

    for p in params:
        grad = p.grad
        assert grad is not None
        m = state.first_moment.get(p.name)
        v = state.second_moment.get(p.name)
        if m is None or m.shape != p.data.shape:
            m = np.zeros_like(p.data)
            v = np.zeros_like(p.data)
        assert v is not None
        m = state.beta1 * m + (1.0 - state.beta1) * grad
        v = state.beta2 * v + (1.0 - state.beta2) * (grad * grad)
        state.first_moment[p.name] = m
        state.second_moment[p.name] = v
        m_hat = m / correction1
        v_hat = v / correction2
        p.data = p.data - state.learning_rate * m_hat / (np.sqrt(v_hat) + state.epsilon)

    return state


class Adam:
    """Optimizer bound to a fixed parameter list."""

    def __init__(self, params: Sequence[Parameter], state: AdamState | None = None):
        self.params = list(params)
        self.state = state if state is not None else AdamState()

    def zero_grad(self) -> None:
        for p in self.params:
            p.grad = None

    def step(self) -> None:
        adam_step(self.params, self.state)
