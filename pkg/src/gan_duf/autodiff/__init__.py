"""Minimal dense-tensor autodiff used to train the hierarchical GAN."""

from gan_duf.autodiff.layers import Conv2d, Linear, Module, downsample2x, upsample2x
from gan_duf.autodiff.optim import Adam, AdamState, Parameter, adam_step
from gan_duf.autodiff.tensor import (
    ComputationTape,
    Tensor,
    add,
    backward,
    clip,
    concat,
    current_tape,
    div,
    exp,
    im2col,
    is_grad_enabled,
    log,
    matmul,
    mean,
    mul,
    no_grad,
    relu,
    reset_tape,
    reshape,
    sigmoid,
    softplus,
    sub,
    sum_,
    tanh,
    transpose,
)

__all__ = [
    "Adam",
    "AdamState",
    "ComputationTape",
    "Conv2d",
    "Linear",
    "Module",
    "Parameter",
    "Tensor",
    "adam_step",
    "add",
    "backward",
    "clip",
    "concat",
    "current_tape",
    "div",
    "downsample2x",
    "exp",
    "im2col",
    "is_grad_enabled",
    "log",
    "matmul",
    "mean",
    "mul",
    "no_grad",
    "relu",
    "reset_tape",
    "reshape",
    "sigmoid",
    "softplus",
    "sub",
    "sum_",
    "tanh",
    "transpose",
    "upsample2x",
]
