from pathlib import Path

import numpy as np
import pytest

from percor import ops

SCENES = Path(__file__).resolve().parent.parent / "scenes"

needs_counting = pytest.mark.skipif(not ops.COUNT_OPS, reason="PERCOR_COUNT_OPS=0")


@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture
def scenes_dir() -> Path:
    return SCENES
