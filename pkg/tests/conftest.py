"""Shared fixtures: small datasets and a briefly trained model."""

import pytest

from gan_duf.dataset import DesignDataset, build_dataset
from gan_duf.geometry import PerturbationConfig
from gan_duf.hgan import ModelCheckpoint, PriorConfig, TrainConfig, train


@pytest.fixture(scope="session")
def airfoil_dataset() -> DesignDataset:
    return build_dataset("airfoil", 8, 3, PerturbationConfig(0.02, seed=5))


@pytest.fixture(scope="session")
def metasurface_dataset() -> DesignDataset:
    return build_dataset("metasurface", 3, 2, PerturbationConfig(1.0, 2.0, seed=5))


@pytest.fixture(scope="session")
def airfoil_prior() -> PriorConfig:
    return PriorConfig(3, 2, 4)


@pytest.fixture(scope="session")
def airfoil_model(airfoil_dataset: DesignDataset, airfoil_prior: PriorConfig) -> ModelCheckpoint:
    """An airfoil model after a handful of steps; weights are random-like but fixed."""
    cfg = TrainConfig(steps=5, batch_size=4, seed=3)
    return train(airfoil_dataset, cfg, airfoil_prior)
