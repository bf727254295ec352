"""Paired nominal/fabricated datasets: generation, persistence and batch sampling."""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import NDArray

from gan_duf.dataset.arrayio import read_array, write_array
from gan_duf.dataset.normalize import Normalizer
from gan_duf.dataset.sources import (
    NominalDesigns,
    airfoil_files,
    check_kind,
    motif_blends,
    synthetic_airfoils,
)
from gan_duf.errors import ConfigError, DatasetFormatError, FormatVersionError
from gan_duf.geometry.airfoil import AirfoilDesign, perturb_airfoil
from gan_duf.geometry.ffd import Array, PerturbationConfig
from gan_duf.geometry.metasurface import (
    MOTIF_NAMES,
    LevelSetField,
    motif_fields,
    perturb_metasurface,
)
from gan_duf.utils.rng import derive_seed, derive_seeds

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"
NOMINAL_NAME = "nominal.bin"
FABRICATED_NAME = "fabricated.bin"
MOTIFS_NAME = "motifs.bin"
MANIFEST_FORMAT = "gan-duf-dataset"
MANIFEST_VERSION = 1

# Stream keys for seed derivation
_NOMINAL_STREAM = 0
_FABRICATION_STREAM = 1


@dataclass
class DesignDataset:
    """Nominal designs ``(N, *shape)`` and their fabrications ``(N, M, *shape)``.

    ``fabricated[i, j]`` is the j-th fabrication of ``nominal[i]``.
    """

    kind: str
    nominal: Array
    fabricated: Array
    manifest: dict[str, Any]
    normalizer: Normalizer
    motifs: Array | None = None

    def __post_init__(self) -> None:
        check_kind(self.kind)
        if self.fabricated.shape[0] != self.nominal.shape[0]:
            raise DatasetFormatError(
                f"{self.fabricated.shape[0]} fabrication groups "
                f"for {self.nominal.shape[0]} nominal designs"
            )
        if self.fabricated.shape[2:] != self.nominal.shape[1:]:
            raise DatasetFormatError(
                f"fabricated design shape {self.fabricated.shape[2:]} differs from nominal "
                f"{self.nominal.shape[1:]}"
            )

    @property
    def n_nominal(self) -> int:
        return int(self.nominal.shape[0])

    @property
    def m_fabricated(self) -> int:
        return int(self.fabricated.shape[1])

    @property
    def design_shape(self) -> tuple[int, ...]:
        return tuple(self.nominal.shape[1:])


def fabricate(kind: str, design: Array, cfg: PerturbationConfig, seed: int) -> Array:
    """One simulated fabrication of ``design`` drawn from the stream ``seed``."""
    rng = np.random.default_rng(seed)
    if kind == "airfoil":
        return perturb_airfoil(AirfoilDesign(design), cfg, rng).points
    return perturb_metasurface(LevelSetField(design), cfg, rng).values


def build_dataset(
    kind: str,
    n_nominal: int,
    m_fabricated: int,
    cfg: PerturbationConfig,
    source_dir: str | None = None,
    log_every: int = 100,
) -> DesignDataset:
    """Generate a dataset whose every random draw is keyed by ``cfg.seed``.

    Args:
        kind: ``"airfoil"`` or ``"metasurface"``.
        n_nominal: Number of nominal designs.
        m_fabricated: Fabrications per nominal design.
        cfg: Perturbation settings; ``cfg.seed`` is the root of all seeds.
        source_dir: Directory of airfoil coordinate files; the synthetic family
            is used when None.
        log_every: Progress logging interval in nominal designs.

    Raises:
        ConfigError: For a bad kind or non-positive sizes.
        FileNotFoundError: If ``source_dir`` does not exist.
    """
    check_kind(kind)
    if n_nominal < 1 or m_fabricated < 1:
        raise ConfigError(
            f"need n_nominal >= 1 and m_fabricated >= 1, got {n_nominal}, {m_fabricated}"
        )

    nominal_seeds = derive_seeds(cfg.seed, n_nominal, _NOMINAL_STREAM)
    source: NominalDesigns
    if kind == "metasurface":
        source = motif_blends(nominal_seeds)
    elif source_dir is not None:
        source = airfoil_files(source_dir, n_nominal)
    else:
        source = synthetic_airfoils(nominal_seeds)

    nominal = np.stack(source.designs)
    fabrication_seeds = [
        [derive_seed(cfg.seed, _FABRICATION_STREAM, i, j) for j in range(m_fabricated)]
        for i in range(n_nominal)
    ]
    fabricated = np.empty((n_nominal, m_fabricated, *nominal.shape[1:]))
    for i in range(n_nominal):
        for j in range(m_fabricated):
            fabricated[i, j] = fabricate(kind, nominal[i], cfg, fabrication_seeds[i][j])
        if (i + 1) % log_every == 0:
            logger.info(f"Generated {i + 1}/{n_nominal} nominal designs with fabrications")

    everything = np.concatenate([nominal, fabricated.reshape(-1, *nominal.shape[1:])])
    normalizer = Normalizer.fit(kind, everything)
    manifest: dict[str, Any] = {
        "format": MANIFEST_FORMAT,
        "version": MANIFEST_VERSION,
        "kind": kind,
        "n_nominal": n_nominal,
        "m_fabricated": m_fabricated,
        "perturbation": cfg.to_dict(),
        "source": {"directory": source_dir} if source_dir else {"synthetic": True},
        "nominal_seeds": nominal_seeds,
        "fabrication_seeds": fabrication_seeds,
        "nominal_provenance": source.provenance,
        "normalizer": normalizer.to_dict(),
    }
    motifs = None
    if kind == "metasurface":
        motifs = motif_fields()
        manifest["motifs"] = list(MOTIF_NAMES)
    logger.info(f"Built {kind} dataset: {n_nominal} nominal x {m_fabricated} fabricated")
    return DesignDataset(kind, nominal, fabricated, manifest, normalizer, motifs)


def rebuild_dataset(manifest: dict[str, Any]) -> DesignDataset:
    """Regenerate a dataset from the seeds and settings recorded in its manifest."""
    source = manifest.get("source", {})
    return build_dataset(
        manifest["kind"],
        int(manifest["n_nominal"]),
        int(manifest["m_fabricated"]),
        PerturbationConfig.from_dict(manifest["perturbation"]),
        source_dir=source.get("directory"),
    )


def save_dataset(dataset: DesignDataset, path: str) -> None:
    """Write the manifest and array files into directory ``path``."""
    os.makedirs(path, exist_ok=True)
    with open(os.path.join(path, MANIFEST_NAME), "w", encoding="utf-8") as f:
        json.dump(dataset.manifest, f, indent=2)
    write_array(os.path.join(path, NOMINAL_NAME), dataset.nominal)
    write_array(os.path.join(path, FABRICATED_NAME), dataset.fabricated)
    if dataset.motifs is not None:
        write_array(os.path.join(path, MOTIFS_NAME), dataset.motifs)
    logger.info(f"Dataset saved to {path}")


def load_dataset(path: str) -> DesignDataset:
    """Read a dataset directory written by :func:`save_dataset`.

    Raises:
        FileNotFoundError: If the manifest or an array file is missing.
        DatasetFormatError: If the files disagree with the manifest.
        FormatVersionError: If the manifest was written by another format version.
    """
    manifest_path = os.path.join(path, MANIFEST_NAME)
    with open(manifest_path, "r", encoding="utf-8") as f:
        manifest = json.load(f)
    if manifest.get("format") != MANIFEST_FORMAT:
        raise DatasetFormatError(f"{manifest_path}: not a gan-duf dataset manifest")
    version = manifest.get("version")
    if version != MANIFEST_VERSION:
        raise FormatVersionError(manifest_path, version, MANIFEST_VERSION)

    nominal = read_array(os.path.join(path, NOMINAL_NAME))
    fabricated = read_array(os.path.join(path, FABRICATED_NAME))
    expected = (int(manifest["n_nominal"]), int(manifest["m_fabricated"]))
    if fabricated.shape[:2] != expected:
        raise DatasetFormatError(
            f"{path}: fabricated array has shape {fabricated.shape}, manifest says {expected}"
        )
    motifs_path = os.path.join(path, MOTIFS_NAME)
    motifs = read_array(motifs_path) if os.path.exists(motifs_path) else None
    return DesignDataset(
        manifest["kind"],
        nominal,
        fabricated,
        manifest,
        Normalizer.from_dict(manifest["normalizer"]),
        motifs,
    )


@dataclass
class PairBatch:
    """Real (nominal, fabricated) pairs in model space with their dataset indices."""

    nominal_index: NDArray[np.int64]
    fabrication_index: NDArray[np.int64]
    nominal: Array
    fabricated: Array


class BatchSampler:
    """Draws a nominal index i and a fabrication index j uniformly per batch row."""

    def __init__(self, dataset: DesignDataset, normalizer: Normalizer | None = None):
        self.dataset = dataset
        self.normalizer = normalizer if normalizer is not None else dataset.normalizer
        self._nominal = self.normalizer.normalize(dataset.nominal)
        self._fabricated = self.normalizer.normalize(dataset.fabricated)

    def sample(self, batch_size: int, rng: np.random.Generator) -> PairBatch:
        i = rng.integers(0, self.dataset.n_nominal, size=batch_size)
        j = rng.integers(0, self.dataset.m_fabricated, size=batch_size)
        return PairBatch(i, j, self._nominal[i], self._fabricated[i, j])
