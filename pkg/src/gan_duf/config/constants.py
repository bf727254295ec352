"""Constants for GAN-DUF."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Colors:
    """ANSI color codes for terminal output."""

    RED: str = "\033[91m"
    YELLOW: str = "\033[93m"
    GREEN: str = "\033[92m"
    CYAN: str = "\033[96m"
    RESET: str = "\033[0m"
    BOLD: str = "\033[1m"


@dataclass(frozen=True)
class Constants:
    """Protocol constants."""

    # Design representations
    AIRFOIL_POINTS: int = 192
    FIELD_SIZE: int = 64
    AIRFOIL_LATTICE_ROWS: int = 3
    AIRFOIL_LATTICE_COLS: int = 8
    METASURFACE_LATTICE: int = 12
    LEVEL_SET_THRESHOLD: float = 0.0

    # Simulated fabrication
    AIRFOIL_NOISE_STD: float = 0.02
    METASURFACE_NOISE_STD: float = 1.0  # pixels
    METASURFACE_FILTER_STD: float = 2.0  # pixels

    # Dataset sizes
    AIRFOIL_NOMINALS: int = 1528
    METASURFACE_NOMINALS: int = 1000
    FABRICATIONS_PER_NOMINAL: int = 10

    # Latent priors
    PRIOR_SCALE: float = 0.5  # covariance of child code and noise
    NOISE_DIM: int = 10
    AIRFOIL_PARENT_DIM: int = 7
    AIRFOIL_CHILD_DIM: int = 5
    METASURFACE_PARENT_DIM: int = 5
    METASURFACE_CHILD_DIM: int = 10

    # Training
    LEARNING_RATE: float = 0.0001
    ADAM_BETA1: float = 0.5
    ADAM_BETA2: float = 0.999
    ADAM_EPSILON: float = 1e-8
    BATCH_SIZE: int = 32
    AIRFOIL_STEPS: int = 20000
    METASURFACE_STEPS: int = 50000
    LAMBDA_INFO: float = 1.0
    PROB_CLAMP: float = 1e-7

    # Uncertainty quantification and optimization
    TAU: float = 0.05
    FIT_RESTARTS_PER_DIM: int = 3
    ACQ_RESTARTS_PER_DIM: int = 10
    AIRFOIL_BO_INIT: int = 21
    AIRFOIL_BO_SEQ: int = 119
    AIRFOIL_MC_SAMPLES: int = 100
    METASURFACE_BO_INIT: int = 15
    METASURFACE_BO_SEQ: int = 85
    METASURFACE_MC_SAMPLES: int = 20
    GROUND_TRUTH_SAMPLES: int = 1000  # simulated fabrications per solution assessment

    # Parametric study sample counts
    STUDY_TARGETS: int = 100
    STUDY_FABRICATIONS: int = 100
    STUDY_NOMINALS: int = 30

    # Metasurface objective band (THz)
    FREQ_MIN: float = 8.0
    FREQ_MAX: float = 9.0
    N_FREQUENCIES: int = 11

    # On-disk array format
    ARRAY_MAGIC: bytes = b"GDUF"
    ARRAY_VERSION: int = 1


# Default instances for easy import
COLORS = Colors()
CONSTANTS = Constants()
