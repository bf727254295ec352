"""Configuration modules for gan-duf."""

from gan_duf.config.config_file import load_config_file, merge_config
from gan_duf.config.constants import COLORS, CONSTANTS, Colors, Constants
from gan_duf.config.presets import PRESETS, RecipePreset, get_preset
from gan_duf.config.settings import RunConfig, prepare_output_dir

__all__ = [
    "COLORS",
    "CONSTANTS",
    "PRESETS",
    "Colors",
    "Constants",
    "RecipePreset",
    "RunConfig",
    "get_preset",
    "load_config_file",
    "merge_config",
    "prepare_output_dir",
]
