from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


@pytest.fixture
def riser_path():
    return FIXTURES / "sample_riser.axo.json"
