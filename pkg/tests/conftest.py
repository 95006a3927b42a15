import random

import pytest

from ecdensity.density import FamilySpec, family

SEED = 20260823


@pytest.fixture
def rng():
    return random.Random(SEED)


@pytest.fixture(scope="session")
def fam_1e3() -> FamilySpec:
    return family(1e3)


@pytest.fixture(scope="session")
def fam_250() -> FamilySpec:
    return family(250.0)
