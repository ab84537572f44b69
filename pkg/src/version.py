# --- START OF FILE src/version.py ---
"""
Single source of truth for the centered-measure tool's version and app information.
All other components should import from this module.
"""

__version__ = "0.4.1"
__app_name__ = "CenteredMeasure"
__app_description__ = (
    "Computes the centered Hausdorff measure of self-similar sets satisfying the "
    "strong separation condition, with certified upper bounds."
)
__author__ = "CenteredMeasure Contributors"
__license__ = "GNU General Public License v3.0"
__copyright__ = "© 2025-2026 CenteredMeasure"


def get_version_info():
    """Return a dictionary with all version and app information."""
    return {
        "version": __version__,
        "app_name": __app_name__,
        "description": __app_description__,
        "author": __author__,
        "license": __license__,
        "copyright": __copyright__,
    }

# --- END OF FILE src/version.py ---
