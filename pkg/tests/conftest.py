import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("ci", deadline=None, max_examples=40, derandomize=True)
settings.load_profile("ci")

SEED = 20260808


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)
