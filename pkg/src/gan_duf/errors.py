"""Exception hierarchy shared by all GAN-DUF modules."""


class GanDufError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(GanDufError, ValueError):
    """Invalid configuration, preset or flag combination."""


class DimensionError(GanDufError, ValueError):
    """Operand shapes are incompatible."""

    def __init__(self, operation: str, left: tuple[int, ...], right: tuple[int, ...]):
        super().__init__(f"{operation}: incompatible shapes {left} and {right}")
        self.operation = operation
        self.left = left
        self.right = right


class ContractViolationError(GanDufError):
    """A documented precondition was broken by the caller."""


class MissingGradientError(GanDufError):
    """An optimizer step was requested for a parameter without a gradient."""

    def __init__(self, name: str):
        super().__init__(f"parameter '{name}' has no gradient")
        self.name = name


class DegenerateGeometryError(GanDufError, ValueError):
    """A design has a zero-width bounding box."""


class ValidationError(GanDufError, ValueError):
    """A domain value is outside its allowed set."""


class DatasetFormatError(GanDufError):
    """Base class for on-disk array format problems."""


class FormatVersionError(DatasetFormatError):
    """The file was written by an unsupported format version."""

    def __init__(self, path: str, found: int, supported: int):
        super().__init__(
            f"{path}: format version {found} is not supported (expected version {supported})"
        )
        self.found = found
        self.supported = supported


class ChecksumError(DatasetFormatError):
    """The payload does not match the checksum stored in the header."""


class TruncatedFileError(DatasetFormatError):
    """The file ends before the header or payload is complete."""


class TrainingDivergedError(GanDufError):
    """A training loss became non-finite."""

    def __init__(self, step: int, detail: str, last_checkpoint: str | None):
        where = last_checkpoint if last_checkpoint else "not written"
        super().__init__(
            f"non-finite loss at step {step} ({detail}); last good checkpoint: {where}"
        )
        self.step = step
        self.last_checkpoint = last_checkpoint


class SurrogateError(GanDufError):
    """The Gaussian-process kernel matrix could not be factorized."""


class RecipeStageError(GanDufError):
    """A stage of an experiment recipe failed."""

    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"recipe stage '{stage}' failed: {cause}")
        self.stage = stage
        self.cause = cause
