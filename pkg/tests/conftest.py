import random

import pytest

from dimfactor.dimensions import DefaultOracle


@pytest.fixture
def rng():
    return random.Random(20260808)


@pytest.fixture(scope="session")
def oracle():
    return DefaultOracle()
