import random

import pytest

from sfb.engine import GammaEngine


@pytest.fixture(scope="session")
def engine():
    # shared engine; memo tables persist across tests on purpose
    return GammaEngine()


@pytest.fixture
def rng():
    return random.Random(0)
