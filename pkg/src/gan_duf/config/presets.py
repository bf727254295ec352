"""Experiment presets: full-scale protocols and desk-scale smoke versions."""

from dataclasses import asdict, dataclass, field
from typing import Any

from gan_duf.config.constants import CONSTANTS
from gan_duf.errors import ConfigError


@dataclass(frozen=True)
class RecipePreset:
    """Every number a recipe needs, from dataset synthesis to the optimization budget."""

    name: str
    kind: str
    n_nominal: int
    m_fabricated: int
    noise_std: float
    filter_std: float
    parent_dim: int
    child_dim: int
    noise_dim: int
    steps: int
    batch_size: int
    learning_rate: float
    lambda_info: float
    checkpoint_every: int
    bo_init: int
    bo_seq: int
    mc_samples: int
    tau: float
    study_targets: int
    study_fabrications: int
    study_nominals: int
    study_kinds: tuple[str, ...]
    study_parent_dims: tuple[int, ...]
    study_child_dims: tuple[int, ...]
    n_frequencies: int = CONSTANTS.N_FREQUENCIES
    log_every: int = 100
    extra: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        for key in ("study_kinds", "study_parent_dims", "study_child_dims"):
            data[key] = list(data[key])
        return data


AIRFOIL_PAPER = RecipePreset(
    name="airfoil_paper",
    kind="airfoil",
    n_nominal=CONSTANTS.AIRFOIL_NOMINALS,
    m_fabricated=CONSTANTS.FABRICATIONS_PER_NOMINAL,
    noise_std=CONSTANTS.AIRFOIL_NOISE_STD,
    filter_std=0.0,
    parent_dim=CONSTANTS.AIRFOIL_PARENT_DIM,
    child_dim=CONSTANTS.AIRFOIL_CHILD_DIM,
    noise_dim=CONSTANTS.NOISE_DIM,
    steps=CONSTANTS.AIRFOIL_STEPS,
    batch_size=CONSTANTS.BATCH_SIZE,
    learning_rate=CONSTANTS.LEARNING_RATE,
    lambda_info=CONSTANTS.LAMBDA_INFO,
    checkpoint_every=5000,
    bo_init=CONSTANTS.AIRFOIL_BO_INIT,
    bo_seq=CONSTANTS.AIRFOIL_BO_SEQ,
    mc_samples=CONSTANTS.AIRFOIL_MC_SAMPLES,
    tau=CONSTANTS.TAU,
    study_targets=CONSTANTS.STUDY_TARGETS,
    study_fabrications=CONSTANTS.STUDY_FABRICATIONS,
    study_nominals=CONSTANTS.STUDY_NOMINALS,
    study_kinds=("fitting", "wasserstein"),
    study_parent_dims=(3, 5, 7, 9),
    study_child_dims=(1, 5, 10),
)

AIRFOIL_SMALL = RecipePreset(
    name="airfoil_small",
    kind="airfoil",
    n_nominal=64,
    m_fabricated=5,
    noise_std=CONSTANTS.AIRFOIL_NOISE_STD,
    filter_std=0.0,
    parent_dim=CONSTANTS.AIRFOIL_PARENT_DIM,
    child_dim=CONSTANTS.AIRFOIL_CHILD_DIM,
    noise_dim=CONSTANTS.NOISE_DIM,
    steps=500,
    batch_size=CONSTANTS.BATCH_SIZE,
    learning_rate=CONSTANTS.LEARNING_RATE,
    lambda_info=CONSTANTS.LAMBDA_INFO,
    checkpoint_every=250,
    bo_init=8,
    bo_seq=12,
    mc_samples=25,
    tau=CONSTANTS.TAU,
    study_targets=10,
    study_fabrications=10,
    study_nominals=3,
    study_kinds=("fitting", "wasserstein"),
    study_parent_dims=(CONSTANTS.AIRFOIL_PARENT_DIM,),
    study_child_dims=(CONSTANTS.AIRFOIL_CHILD_DIM,),
    log_every=50,
)

METASURFACE_PAPER = RecipePreset(
    name="metasurface_paper",
    kind="metasurface",
    n_nominal=CONSTANTS.METASURFACE_NOMINALS,
    m_fabricated=CONSTANTS.FABRICATIONS_PER_NOMINAL,
    noise_std=CONSTANTS.METASURFACE_NOISE_STD,
    filter_std=CONSTANTS.METASURFACE_FILTER_STD,
    parent_dim=CONSTANTS.METASURFACE_PARENT_DIM,
    child_dim=CONSTANTS.METASURFACE_CHILD_DIM,
    noise_dim=CONSTANTS.NOISE_DIM,
    steps=CONSTANTS.METASURFACE_STEPS,
    batch_size=CONSTANTS.BATCH_SIZE,
    learning_rate=CONSTANTS.LEARNING_RATE,
    lambda_info=CONSTANTS.LAMBDA_INFO,
    checkpoint_every=10000,
    bo_init=CONSTANTS.METASURFACE_BO_INIT,
    bo_seq=CONSTANTS.METASURFACE_BO_SEQ,
    mc_samples=CONSTANTS.METASURFACE_MC_SAMPLES,
    tau=CONSTANTS.TAU,
    study_targets=CONSTANTS.STUDY_TARGETS,
    study_fabrications=CONSTANTS.STUDY_FABRICATIONS,
    study_nominals=CONSTANTS.STUDY_NOMINALS,
    study_kinds=("fitting",),
    study_parent_dims=(3, 5, 7, 9),
    study_child_dims=(CONSTANTS.METASURFACE_CHILD_DIM,),
)

METASURFACE_SMALL = RecipePreset(
    name="metasurface_small",
    kind="metasurface",
    n_nominal=32,
    m_fabricated=3,
    noise_std=CONSTANTS.METASURFACE_NOISE_STD,
    filter_std=CONSTANTS.METASURFACE_FILTER_STD,
    parent_dim=CONSTANTS.METASURFACE_PARENT_DIM,
    child_dim=CONSTANTS.METASURFACE_CHILD_DIM,
    noise_dim=CONSTANTS.NOISE_DIM,
    steps=200,
    batch_size=CONSTANTS.BATCH_SIZE,
    learning_rate=CONSTANTS.LEARNING_RATE,
    lambda_info=CONSTANTS.LAMBDA_INFO,
    checkpoint_every=100,
    bo_init=5,
    bo_seq=5,
    mc_samples=5,
    tau=CONSTANTS.TAU,
    study_targets=5,
    study_fabrications=5,
    study_nominals=2,
    study_kinds=("fitting",),
    study_parent_dims=(CONSTANTS.METASURFACE_PARENT_DIM,),
    study_child_dims=(CONSTANTS.METASURFACE_CHILD_DIM,),
    log_every=50,
)

PRESETS: dict[str, RecipePreset] = {
    preset.name: preset
    for preset in (AIRFOIL_PAPER, AIRFOIL_SMALL, METASURFACE_PAPER, METASURFACE_SMALL)
}


def get_preset(name: str) -> RecipePreset:
    """Look up a preset by name.

    Raises:
        ConfigError: If no preset has that name.
    """
    try:
        return PRESETS[name]
    except KeyError:
        known = ", ".join(sorted(PRESETS))
        raise ConfigError(f"unknown recipe '{name}' (known: {known})") from None
