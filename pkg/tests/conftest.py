import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make oracles importable

REPO = Path(__file__).resolve().parent.parent
DATA_DIR = REPO / "data"


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_two_class(rng, n_max=30, m_max=6):
    """A random binary problem with both classes present."""
    n = int(rng.integers(6, n_max + 1))
    m = int(rng.integers(1, m_max + 1))
    x = rng.normal(size=(n, m))
    y = rng.choice([-1, 1], size=n)
    y[0], y[1] = 1, -1  # guarantee both classes
    return x, y
