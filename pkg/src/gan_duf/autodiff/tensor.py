"""Dense float64 tensors with tape-based reverse-mode differentiation.

Operations on tensors that require gradients are appended to a per-thread
``ComputationTape``. ``backward`` walks the tape once in reverse, accumulates
gradients into the leaf tensors and clears the tape. Inside ``no_grad()``
nothing is recorded.
"""

from __future__ import annotations

import threading
from collections.abc import Callable, Iterator, Sequence
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from numpy.typing import NDArray
from scipy.special import expit

from gan_duf.errors import ContractViolationError, DimensionError

Array = NDArray[np.float64]
GradRule = Callable[[Array], Sequence[Array | None]]


class Tensor:
    """An n-dimensional array of float64 values with an optional gradient buffer."""

    __array_priority__ = 100.0

    def __init__(self, data: Any, requires_grad: bool = False, name: str | None = None):
        self.data: Array = np.array(data, dtype=np.float64)
        self.requires_grad = requires_grad
        self.grad: Array | None = None
        self.name = name

    @classmethod
    def _wrap(cls, data: Array, requires_grad: bool) -> Tensor:
        out = cls.__new__(cls)
        out.data = np.ascontiguousarray(data, dtype=np.float64)
        out.requires_grad = requires_grad
        out.grad = None
        out.name = None
        return out

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(self.data.shape)

    @property
    def ndim(self) -> int:
        return int(self.data.ndim)

    @property
    def size(self) -> int:
        return int(self.data.size)

    def item(self) -> float:
        return float(self.data.reshape(-1)[0]) if self.data.size == 1 else float("nan")

    def numpy(self) -> Array:
        """Return a copy of the values."""
        return self.data.copy()

    def zero_grad(self) -> None:
        self.grad = None

    def __repr__(self) -> str:
        label = f", name={self.name!r}" if self.name else ""
        return f"Tensor(shape={self.shape}, requires_grad={self.requires_grad}{label})"

    def __add__(self, other: Any) -> Tensor:
        return add(self, other)

    def __radd__(self, other: Any) -> Tensor:
        return add(other, self)

    def __sub__(self, other: Any) -> Tensor:
        return sub(self, other)

    def __rsub__(self, other: Any) -> Tensor:
        return sub(other, self)

    def __mul__(self, other: Any) -> Tensor:
        return mul(self, other)

    def __rmul__(self, other: Any) -> Tensor:
        return mul(other, self)

    def __truediv__(self, other: Any) -> Tensor:
        return div(self, other)

    def __neg__(self) -> Tensor:
        return mul(self, -1.0)

    def __matmul__(self, other: Any) -> Tensor:
        return matmul(self, other)

    def sum(self, axis: int | tuple[int, ...] | None = None, keepdims: bool = False) -> Tensor:
        return sum_(self, axis=axis, keepdims=keepdims)

    def mean(self, axis: int | tuple[int, ...] | None = None, keepdims: bool = False) -> Tensor:
        return mean(self, axis=axis, keepdims=keepdims)

    def reshape(self, *shape: int) -> Tensor:
        return reshape(self, shape)

    def transpose(self, *axes: int) -> Tensor:
        return transpose(self, axes if axes else None)


@dataclass
class TapeEntry:
    """One recorded primitive: output node, input nodes and local gradient rule."""

    output: Tensor
    inputs: tuple[Tensor, ...]
    rule: GradRule


class ComputationTape:
    """Ordered record of primitive operations, in execution (topological) order."""

    def __init__(self) -> None:
        self.entries: list[TapeEntry] = []

    def record(self, entry: TapeEntry) -> None:
        self.entries.append(entry)

    def clear(self) -> None:
        self.entries.clear()

    def __len__(self) -> int:
        return len(self.entries)


class _AutodiffState(threading.local):
    def __init__(self) -> None:
        self.tape = ComputationTape()
        self.grad_enabled = True


_state = _AutodiffState()


def current_tape() -> ComputationTape:
    """Return the tape of the calling thread."""
    return _state.tape


def is_grad_enabled() -> bool:
    return _state.grad_enabled


@contextmanager
def no_grad() -> Iterator[None]:
    """Disable recording for the enclosed block."""
    previous = _state.grad_enabled
    _state.grad_enabled = False
    try:
        yield
    finally:
        _state.grad_enabled = previous


def as_tensor(value: Any) -> Tensor:
    return value if isinstance(value, Tensor) else Tensor(value)


def _result(data: Array, inputs: tuple[Tensor, ...], rule: GradRule) -> Tensor:
    needs_grad = _state.grad_enabled and any(t.requires_grad for t in inputs)
    out = Tensor._wrap(data, needs_grad)
    if needs_grad:
        _state.tape.record(TapeEntry(out, inputs, rule))
    return out


def _unbroadcast(grad: Array, shape: tuple[int, ...]) -> Array:
    """Sum ``grad`` down to ``shape`` after numpy broadcasting."""
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for axis, extent in enumerate(shape):
        if extent == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)
    return grad


def _broadcast_shape(op: str, a: Tensor, b: Tensor) -> None:
    try:
        np.broadcast_shapes(a.shape, b.shape)
    except ValueError:
        raise DimensionError(op, a.shape, b.shape) from None


def add(a: Any, b: Any) -> Tensor:
    a, b = as_tensor(a), as_tensor(b)
    _broadcast_shape("add", a, b)

    def rule(g: Array) -> tuple[Array, Array]:
        return _unbroadcast(g, a.shape), _unbroadcast(g, b.shape)

    return _result(a.data + b.data, (a, b), rule)


def sub(a: Any, b: Any) -> Tensor:
    a, b = as_tensor(a), as_tensor(b)
    _broadcast_shape("subtract", a, b)

    def rule(g: Array) -> tuple[Array, Array]:
        return _unbroadcast(g, a.shape), _unbroadcast(-g, b.shape)

    return _result(a.data - b.data, (a, b), rule)


def mul(a: Any, b: Any) -> Tensor:
    a, b = as_tensor(a), as_tensor(b)
    _broadcast_shape("multiply", a, b)

    def rule(g: Array) -> tuple[Array, Array]:
        return _unbroadcast(g * b.data, a.shape), _unbroadcast(g * a.data, b.shape)

    return _result(a.data * b.data, (a, b), rule)


def div(a: Any, b: Any) -> Tensor:
    a, b = as_tensor(a), as_tensor(b)
    _broadcast_shape("divide", a, b)

    def rule(g: Array) -> tuple[Array, Array]:
        return (
            _unbroadcast(g / b.data, a.shape),
            _unbroadcast(-g * a.data / (b.data * b.data), b.shape),
        )

    return _result(a.data / b.data, (a, b), rule)


def matmul(a: Any, b: Any) -> Tensor:
    """Matrix product over the last two axes, broadcasting leading axes."""
    a, b = as_tensor(a), as_tensor(b)
    if a.ndim < 2 or b.ndim < 2 or a.shape[-1] != b.shape[-2]:
        raise DimensionError("matmul", a.shape, b.shape)
    try:
        np.broadcast_shapes(a.shape[:-2], b.shape[:-2])
    except ValueError:
        raise DimensionError("matmul", a.shape, b.shape) from None

    def rule(g: Array) -> tuple[Array, Array]:
        ga = np.matmul(g, np.swapaxes(b.data, -1, -2))
        gb = np.matmul(np.swapaxes(a.data, -1, -2), g)
        return _unbroadcast(ga, a.shape), _unbroadcast(gb, b.shape)

    return _result(np.matmul(a.data, b.data), (a, b), rule)


def tanh(x: Tensor) -> Tensor:
    y = np.tanh(x.data)
    return _result(y, (x,), lambda g: (g * (1.0 - y * y),))


def sigmoid(x: Tensor) -> Tensor:
    y = expit(x.data)
    return _result(y, (x,), lambda g: (g * y * (1.0 - y),))


def relu(x: Tensor) -> Tensor:
    mask = (x.data > 0.0).astype(np.float64)
    return _result(x.data * mask, (x,), lambda g: (g * mask,))


def softplus(x: Tensor) -> Tensor:
    y = np.logaddexp(0.0, x.data)
    return _result(y, (x,), lambda g: (g * expit(x.data),))


def log(x: Tensor) -> Tensor:
    return _result(np.log(x.data), (x,), lambda g: (g / x.data,))


def exp(x: Tensor) -> Tensor:
    y = np.exp(x.data)
    return _result(y, (x,), lambda g: (g * y,))


def clip(x: Tensor, low: float, high: float) -> Tensor:
    """Clamp values into ``[low, high]``; the gradient is zero where clamping applied."""
    mask = ((x.data >= low) & (x.data <= high)).astype(np.float64)
    return _result(np.clip(x.data, low, high), (x,), lambda g: (g * mask,))


def _normalize_axes(axis: int | tuple[int, ...] | None, ndim: int) -> tuple[int, ...]:
    if axis is None:
        return tuple(range(ndim))
    axes = (axis,) if isinstance(axis, int) else axis
    return tuple(a % ndim for a in axes)


def sum_(x: Tensor, axis: int | tuple[int, ...] | None = None, keepdims: bool = False) -> Tensor:
    axes = _normalize_axes(axis, x.ndim)

    def rule(g: Array) -> tuple[Array]:
        if not keepdims:
            g = np.expand_dims(g, axes)
        return (np.broadcast_to(g, x.shape).copy(),)

    return _result(np.sum(x.data, axis=axes, keepdims=keepdims), (x,), rule)


def mean(x: Tensor, axis: int | tuple[int, ...] | None = None, keepdims: bool = False) -> Tensor:
    axes = _normalize_axes(axis, x.ndim)
    count = int(np.prod([x.shape[a] for a in axes])) if axes else 1
    return mul(sum_(x, axis=axes, keepdims=keepdims), 1.0 / count)


def concat(tensors: Sequence[Tensor], axis: int = 0) -> Tensor:
    """Concatenate along ``axis``; all other extents must agree."""
    parts = tuple(as_tensor(t) for t in tensors)
    if not parts:
        raise ContractViolationError("concat() needs at least one tensor")
    ndim = parts[0].ndim
    axis = axis % ndim
    for t in parts[1:]:
        other_a = parts[0].shape[:axis] + parts[0].shape[axis + 1 :]
        other_b = t.shape[:axis] + t.shape[axis + 1 :]
        if t.ndim != ndim or other_a != other_b:
            raise DimensionError("concat", parts[0].shape, t.shape)
    bounds = np.cumsum([t.shape[axis] for t in parts])[:-1]

    def rule(g: Array) -> list[Array]:
        return [np.ascontiguousarray(piece) for piece in np.split(g, bounds, axis=axis)]

    return _result(np.concatenate([t.data for t in parts], axis=axis), parts, rule)


def reshape(x: Tensor, shape: Sequence[int]) -> Tensor:
    shape = tuple(shape[0]) if len(shape) == 1 and isinstance(shape[0], tuple) else tuple(shape)
    try:
        data = x.data.reshape(shape)
    except ValueError:
        raise DimensionError("reshape", x.shape, shape) from None
    return _result(data, (x,), lambda g: (g.reshape(x.shape),))


def transpose(x: Tensor, axes: Sequence[int] | None = None) -> Tensor:
    perm = tuple(range(x.ndim))[::-1] if axes is None else tuple(axes)
    inverse = tuple(int(i) for i in np.argsort(perm))
    return _result(np.transpose(x.data, perm), (x,), lambda g: (np.transpose(g, inverse),))


def im2col(x: Tensor, kernel: int, padding: int) -> Tensor:
    """Unfold ``(N, C, H, W)`` into ``(N*H'*W', C*kernel*kernel)`` patch rows (stride 1)."""
    if x.ndim != 4:
        raise DimensionError("im2col", x.shape, (kernel, kernel))
    n, c, h, w = x.shape
    padded = np.pad(x.data, ((0, 0), (0, 0), (padding, padding), (padding, padding)))
    windows = sliding_window_view(padded, (kernel, kernel), axis=(2, 3))
    out_h, out_w = windows.shape[2], windows.shape[3]
    cols = windows.transpose(0, 2, 3, 1, 4, 5).reshape(n * out_h * out_w, c * kernel * kernel)

    def rule(g: Array) -> tuple[Array]:
        g6 = g.reshape(n, out_h, out_w, c, kernel, kernel).transpose(0, 3, 1, 2, 4, 5)
        grad = np.zeros_like(padded)
        for di in range(kernel):
            for dj in range(kernel):
                grad[:, :, di : di + out_h, dj : dj + out_w] += g6[..., di, dj]
        return (grad[:, :, padding : padding + h, padding : padding + w],)

    return _result(cols, (x,), rule)


def backward(loss: Tensor) -> None:
    """Populate ``grad`` of every leaf tensor that ``loss`` depends on, then clear the tape.

    Raises:
        ContractViolationError: If ``loss`` is not a scalar or nothing was recorded.
    """
    if loss.size != 1:
        raise ContractViolationError(f"backward() needs a scalar loss, got shape {loss.shape}")
    tape = _state.tape
    if len(tape) == 0:
        raise ContractViolationError("backward() called with an empty computation tape")

    pending: dict[int, Array] = {id(loss): np.ones_like(loss.data)}
    nodes: dict[int, Tensor] = {id(loss): loss}

    try:
        for entry in reversed(tape.entries):
            g = pending.pop(id(entry.output), None)
            if g is None:
                continue
            for tensor, grad in zip(entry.inputs, entry.rule(g)):
                if grad is None or not tensor.requires_grad:
                    continue
                key = id(tensor)
                nodes[key] = tensor
                pending[key] = pending[key] + grad if key in pending else grad

        for key, grad in pending.items():
            leaf = nodes[key]
            leaf.grad = grad.copy() if leaf.grad is None else leaf.grad + grad
    finally:
        tape.clear()


def reset_tape() -> None:
    """Drop everything recorded on the calling thread's tape."""
    _state.tape.clear()
