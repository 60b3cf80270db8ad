import os
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

from ainfmut.generators import random_corpus  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"
SEED = int(os.environ.get("AINFMUT_SEED", "0"))

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def corpus():
    return random_corpus(seed=SEED, count=200)


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)
