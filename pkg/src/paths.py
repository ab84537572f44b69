# Path configuration module for CenteredMeasure
# This module centralizes all path logic for the application

import os
import sys
from pathlib import Path

IS_FROZEN = getattr(sys, 'frozen', False)

# User configuration paths (per-user, in home directory)
# CENTERED_MEASURE_CONFIG_DIR overrides the location (used by tests and CI)
_config_override = os.environ.get("CENTERED_MEASURE_CONFIG_DIR")
USER_CONFIG_DIR = Path(_config_override) if _config_override else Path.home() / ".config" / "CenteredMeasure"
USER_CONFIG_FILE_PATH = str(USER_CONFIG_DIR / "config.json")


def resolve_output_path(path: str | None) -> Path | None:
    """Expand ~ and make an output path absolute; None stays None."""
    if path is None:
        return None
    return Path(path).expanduser().resolve()


__all__ = [
    'IS_FROZEN',
    'USER_CONFIG_DIR', 'USER_CONFIG_FILE_PATH',
    'resolve_output_path',
]
