"""Nominal-design sources: synthetic airfoils, airfoil coordinate files, motif blends."""

import logging
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from gan_duf.errors import ConfigError
from gan_duf.geometry.airfoil import load_airfoil_file, sample_synthetic_airfoil, scan_airfoil_files
from gan_duf.geometry.ffd import Array
from gan_duf.geometry.metasurface import synth_metasurface_nominal

logger = logging.getLogger(__name__)

DESIGN_KINDS = ("airfoil", "metasurface")


@dataclass
class NominalDesigns:
    """Nominal designs plus the per-design provenance stored in the manifest."""

    designs: list[Array]
    provenance: list[dict[str, Any]] = field(default_factory=list)


def check_kind(kind: str) -> str:
    if kind not in DESIGN_KINDS:
        raise ConfigError(f"unknown design kind '{kind}' (expected one of {DESIGN_KINDS})")
    return kind


def synthetic_airfoils(seeds: list[int]) -> NominalDesigns:
    out = NominalDesigns([])
    for seed in seeds:
        design, params = sample_synthetic_airfoil(np.random.default_rng(seed))
        out.designs.append(design.points)
        out.provenance.append({"seed": seed, "family": "naca4", **params})
    return out


def airfoil_files(directory: str, count: int) -> NominalDesigns:
    """Load the first ``count`` coordinate files (sorted by path) under ``directory``.

    Raises:
        FileNotFoundError: If the directory is missing.
        ConfigError: If it holds fewer than ``count`` coordinate files.
    """
    paths = scan_airfoil_files(directory)
    if len(paths) < count:
        raise ConfigError(f"{directory}: found {len(paths)} coordinate files, need {count}")
    out = NominalDesigns([])
    for path in paths[:count]:
        out.designs.append(load_airfoil_file(path).points)
        out.provenance.append({"file": path})
    logger.info(f"Loaded {count} nominal airfoils from {directory}")
    return out


def motif_blends(seeds: list[int]) -> NominalDesigns:
    out = NominalDesigns([])
    for seed in seeds:
        rng = np.random.default_rng(seed)
        weights = rng.dirichlet(np.ones(3))
        out.designs.append(synth_metasurface_nominal(weights).values)
        out.provenance.append({"seed": seed, "motif_weights": weights.tolist()})
    return out
