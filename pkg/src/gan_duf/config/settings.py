"""Runtime settings for GAN-DUF commands."""

import json
import logging
import os
from dataclasses import dataclass, field
from typing import Any

from gan_duf.errors import ConfigError

logger = logging.getLogger(__name__)

RESOLVED_CONFIG_NAME = "resolved_config.json"


@dataclass
class RunConfig:
    """Resolved configuration of one CLI command.

    ``params`` holds the command-specific parameter records (prior, training,
    perturbation, robust-objective settings) in their ``to_dict`` form so the
    whole record serializes to JSON.
    """

    command: str
    seed: int = 0
    output_dir: str = ""
    threads: int = 1
    force: bool = False
    params: dict[str, Any] = field(default_factory=dict)
    log_level: str = field(
        default_factory=lambda: os.environ.get("GAN_DUF_LOG_LEVEL", "INFO").upper()
    )

    def __post_init__(self) -> None:
        """Validate and normalize settings."""
        if self.output_dir:
            self.output_dir = os.path.abspath(self.output_dir)
        if self.threads < 1:
            raise ConfigError(f"threads must be >= 1, got {self.threads}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "seed": self.seed,
            "output_dir": self.output_dir,
            "threads": self.threads,
            "force": self.force,
            "params": self.params,
        }

    def write_resolved(self) -> str:
        """Write ``resolved_config.json`` into the output directory.

        Returns:
            Path of the written file.
        """
        path = os.path.join(self.output_dir, RESOLVED_CONFIG_NAME)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, indent=2, sort_keys=True)
        logger.debug(f"Resolved config written to {path}")
        return path


def prepare_output_dir(path: str, force: bool) -> str:
    """Create an output directory, refusing to reuse a non-empty one without ``force``.

    Args:
        path: Directory to create.
        force: Allow writing into an existing non-empty directory.

    Returns:
        Absolute path of the directory.

    Raises:
        ConfigError: If the directory exists, is non-empty and ``force`` is False.
    """
    path = os.path.abspath(path)
    if os.path.isdir(path) and os.listdir(path) and not force:
        raise ConfigError(f"output directory '{path}' is not empty (use --force to overwrite)")
    os.makedirs(path, exist_ok=True)
    return path
