"""Model checkpoints: a JSON header plus one binary parameter blob."""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from gan_duf.autodiff import Parameter
from gan_duf.autodiff.tensor import Array
from gan_duf.dataset.arrayio import read_array, write_array
from gan_duf.dataset.normalize import Normalizer
from gan_duf.errors import DatasetFormatError
from gan_duf.hgan.networks import Discriminator, Generator
from gan_duf.hgan.priors import PriorConfig

logger = logging.getLogger(__name__)

CHECKPOINT_FORMAT = "gan-duf-checkpoint"
CHECKPOINT_VERSION = 1
FINAL_CHECKPOINT = "checkpoint_final"


@dataclass
class ModelCheckpoint:
    """Generator, discriminator (with Q head) and everything needed to rebuild them."""

    kind: str
    prior: PriorConfig
    generator: Generator
    discriminator: Discriminator
    train_config: dict[str, Any] = field(default_factory=dict)
    step: int = 0
    normalizer: Normalizer | None = None
    loss_history: list[dict[str, float]] = field(default_factory=list)

    def parameters(self) -> list[Parameter]:
        return self.generator.parameters() + self.discriminator.parameters()

    def parameter_arrays(self) -> dict[str, Array]:
        return {p.name: p.data.copy() for p in self.parameters()}

    @classmethod
    def initialize(
        cls,
        kind: str,
        prior: PriorConfig,
        generator_rng: np.random.Generator,
        discriminator_rng: np.random.Generator,
        **extra: Any,
    ) -> ModelCheckpoint:
        return cls(
            kind,
            prior,
            Generator(kind, prior, generator_rng),
            Discriminator(kind, prior, discriminator_rng),
            **extra,
        )


def checkpoint_paths(path: str) -> tuple[str, str]:
    """Return the (header, blob) paths for ``path`` with or without the ``.json`` suffix."""
    stem = path[: -len(".json")] if path.endswith(".json") else path
    return f"{stem}.json", f"{stem}.bin"


def save_checkpoint(ckpt: ModelCheckpoint, directory: str, name: str) -> str:
    """Write ``<name>.json`` and ``<name>.bin`` into ``directory``; return the header path."""
    os.makedirs(directory, exist_ok=True)
    header_path, blob_path = checkpoint_paths(os.path.join(directory, name))
    params = ckpt.parameters()
    flat = np.concatenate([p.data.reshape(-1) for p in params]) if params else np.zeros(0)
    write_array(blob_path, flat)

    header = {
        "format": CHECKPOINT_FORMAT,
        "version": CHECKPOINT_VERSION,
        "kind": ckpt.kind,
        "step": ckpt.step,
        "prior": ckpt.prior.to_dict(),
        "train_config": ckpt.train_config,
        "normalizer": ckpt.normalizer.to_dict() if ckpt.normalizer else None,
        "parameters": [{"name": p.name, "shape": list(p.shape)} for p in params],
        "blob": os.path.basename(blob_path),
        "loss_summary": ckpt.loss_history[-1] if ckpt.loss_history else None,
        "loss_history": ckpt.loss_history,
    }
    with open(header_path, "w", encoding="utf-8") as f:
        json.dump(header, f, indent=2)
    logger.debug(f"Checkpoint at step {ckpt.step} written to {header_path}")
    return header_path


def load_checkpoint(path: str) -> ModelCheckpoint:
    """Rebuild a checkpoint written by :func:`save_checkpoint`.

    Raises:
        FileNotFoundError: If the header or blob is missing.
        DatasetFormatError: If the blob does not match the recorded parameters.
    """
    header_path, _ = checkpoint_paths(path)
    with open(header_path, "r", encoding="utf-8") as f:
        header = json.load(f)
    if header.get("format") != CHECKPOINT_FORMAT:
        raise DatasetFormatError(f"{header_path}: not a gan-duf checkpoint")

    prior = PriorConfig.from_dict(header["prior"])
    normalizer = Normalizer.from_dict(header["normalizer"]) if header["normalizer"] else None
    rng = np.random.default_rng(0)
    ckpt = ModelCheckpoint.initialize(
        header["kind"],
        prior,
        rng,
        rng,
        train_config=header["train_config"],
        step=int(header["step"]),
        normalizer=normalizer,
        loss_history=header.get("loss_history", []),
    )
    flat = read_array(os.path.join(os.path.dirname(header_path), header["blob"]))

    params = {p.name: p for p in ckpt.parameters()}
    recorded = [entry["name"] for entry in header["parameters"]]
    if sorted(recorded) != sorted(params):
        raise DatasetFormatError(f"{header_path}: parameter names do not match the architecture")
    offset = 0
    for entry in header["parameters"]:
        param = params[entry["name"]]
        shape = tuple(entry["shape"])
        if shape != param.shape:
            raise DatasetFormatError(
                f"{header_path}: {entry['name']} has shape {shape}, expected {param.shape}"
            )
        count = int(np.prod(shape))
        if offset + count > flat.size:
            raise DatasetFormatError(f"{header_path}: parameter blob is too short")
        param.data = flat[offset : offset + count].reshape(shape).copy()
        offset += count
    if offset != flat.size:
        extra = flat.size - offset
        raise DatasetFormatError(f"{header_path}: parameter blob has {extra} extra values")
    return ckpt
