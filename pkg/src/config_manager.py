# --- START OF FILE config_manager.py ---

import json
import os

from paths import USER_CONFIG_FILE_PATH
from debug_logging import log_debug, log_warning


def load_config(config_path: str = USER_CONFIG_FILE_PATH) -> dict:
    """Loads the configuration from the JSON file."""
    if os.path.exists(config_path):
        try:
            with open(config_path, 'r', encoding='utf-8') as f:
                config = json.load(f)
                if isinstance(config, dict):
                    log_debug("CONFIG", f"Loaded settings from '{config_path}'")
                    return config
                else:
                    log_warning("CONFIG", f"Config file '{config_path}' does not contain a valid JSON object. Using defaults.")
                    return {}
        except (json.JSONDecodeError, IOError) as e:
            log_warning("CONFIG", f"Error loading config file '{config_path}': {e}. Using defaults.")
            return {}
    return {}


# --- Setting accessors with defaults ---
_config_cache = None

def _get_cached_config() -> dict:
    """Internal helper to load config only once."""
    global _config_cache
    if _config_cache is None:
        _config_cache = load_config()
    return _config_cache


def reset_cache() -> None:
    """Forget the cached settings so the next access re-reads the file."""
    global _config_cache
    _config_cache = None


def get_setting(key: str, default=None):
    """Gets a specific setting from the config, returning a default if not found."""
    return _get_cached_config().get(key, default)


def get_positive_float(key: str, default: float) -> float:
    """A float setting that must be > 0; invalid values fall back to the default."""
    value = get_setting(key, default)
    try:
        value = float(value)
    except (TypeError, ValueError):
        log_warning("CONFIG", f"Setting '{key}'={value!r} is not a number. Using {default}.")
        return default
    if not value > 0:
        log_warning("CONFIG", f"Setting '{key}'={value!r} must be positive. Using {default}.")
        return default
    return value


def get_int(key: str, default: int, minimum: int = 1) -> int:
    """An integer setting that must be >= minimum; invalid values fall back to the default."""
    value = get_setting(key, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)) or int(value) != value or value < minimum:
        log_warning("CONFIG", f"Setting '{key}'={value!r} must be an integer >= {minimum}. Using {default}.")
        return default
    return int(value)

# --- END OF FILE config_manager.py ---
