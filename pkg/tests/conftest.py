"""
Shared fixtures for the wsym test suite.

src/ is put on sys.path the same way main.py does it, so the flat modules import
without installing the package.
"""
import sys
from pathlib import Path

import pytest

src_dir = Path(__file__).parent.parent / "src"
sys.path.insert(0, str(src_dir))

from forms import BilinearForm  # noqa: E402
from homogeneous import make_reductive_space  # noqa: E402
from lie_core import LieAlgebra, Subspace  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: surveys at full sample counts (deselect with -m \"not slow\")")


@pytest.fixture
def heis3():
    """Three-dimensional Heisenberg algebra, [x, y] = z."""
    return LieAlgebra.from_brackets(["x", "y", "z"], [(0, 1, {2: 1})], "heis3")


@pytest.fixture
def sl2():
    """sl(2, R) with [h, e] = 2e, [h, f] = -2f, [e, f] = h; basis order e, f, h."""
    return LieAlgebra.from_brackets(
        ["e", "f", "h"], [(2, 0, {0: 2}), (2, 1, {1: -2}), (0, 1, {2: 1})], "sl2")


@pytest.fixture
def lorentzian_sl2(sl2):
    """SL(2,R)/A with m = span(e, f) and the hyperbolic metric <e, f> = 1."""
    return make_reductive_space(
        sl2, Subspace.coordinate(3, [2]), Subspace.coordinate(3, [0, 1]),
        BilinearForm([[0, 1], [1, 0]]), "sl2/a")


@pytest.fixture
def heis3_left_invariant(heis3):
    """Heisenberg group with the identity metric and no isotropy; not geodesic orbit."""
    return make_reductive_space(heis3, Subspace.zero(3), Subspace.full(3),
                                BilinearForm.identity(3), "heis3-left")
