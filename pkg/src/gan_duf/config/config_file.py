"""Load JSON run-config files and merge them with flags and defaults."""

import json
import logging
import os
from typing import Any

from gan_duf.errors import ConfigError

logger = logging.getLogger(__name__)


def _reject(message: str, required: bool) -> None:
    if required:
        raise ConfigError(message)
    logger.warning(message)


def load_config_file(config_path: str, required: bool = False) -> dict[str, Any] | None:
    """Load a JSON run-config file.

    Args:
        config_path: Path to the JSON file.
        required: Raise instead of warning when the file is missing or unusable.

    Returns:
        Parsed configuration or None if the file doesn't exist or is invalid.

    Raises:
        ConfigError: When ``required`` and the file cannot be used; names the path and cause.
    """
    if not os.path.isfile(config_path):
        _reject(f"Config file not found: {config_path}", required)
        return None

    try:
        with open(config_path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        _reject(f"Invalid JSON in {config_path}: {e}", required)
        return None
    except OSError as e:
        _reject(f"Could not read {config_path}: {e}", required)
        return None

    if not isinstance(data, dict):
        _reject(f"Config file {config_path}: top-level value is not an object", required)
        return None
    return data


def merge_config(
    defaults: dict[str, Any],
    file_config: dict[str, Any] | None,
    flags: dict[str, Any],
) -> dict[str, Any]:
    """Resolve parameters with precedence flags > config file > defaults.

    Only keys present in ``defaults`` are accepted; unknown file keys are logged
    and ignored. Flags whose value is None count as "not given".

    Args:
        defaults: Default value for every known key.
        file_config: Parsed config file or None.
        flags: Values taken from the command line.

    Returns:
        New dictionary with the resolved values.
    """
    resolved = dict(defaults)

    if file_config:
        for key, value in file_config.items():
            if key not in defaults:
                logger.warning(f"Ignoring unknown config key: {key}")
                continue
            resolved[key] = value

    for key, value in flags.items():
        if key in defaults and value is not None:
            resolved[key] = value

    return resolved
