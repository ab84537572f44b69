import os
import sys

import pytest

# Add src directory to path
tests_dir = os.path.dirname(os.path.abspath(__file__))
src_dir = os.path.join(os.path.dirname(tests_dir), 'src')
sys.path.insert(0, src_dir)

# Keep the developer's own settings file out of the test run
os.environ.setdefault("CENTERED_MEASURE_CONFIG_DIR", os.path.join(tests_dir, ".no-user-config"))

import config_manager  # noqa: E402
import gallery  # noqa: E402
from ifs_core import IFSystem  # noqa: E402


@pytest.fixture(autouse=True)
def _fresh_settings():
    config_manager.reset_cache()
    yield
    config_manager.reset_cache()


@pytest.fixture
def cantor():
    return gallery.get("cantor-1-3").system


@pytest.fixture
def sym_cantor():
    return gallery.get("sym-cantor(1/8,1/5)").system


@pytest.fixture
def planar4():
    return gallery.get("planar4(1/400,1/20,1/400,1/20)").system


@pytest.fixture
def sierpinski():
    return gallery.get("sierpinski(1/5)").system


@pytest.fixture
def quarter_cantor():
    return gallery.get("quarter-cantor").system


@pytest.fixture
def touching_halves():
    """x/2 and x/2 + 1/2: the pieces of [0, 1] meet at 1/2."""
    return IFSystem.from_parameters([0.5, 0.5], [[0.0], [0.5]])
