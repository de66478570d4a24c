"""Shared fixtures: the SNA(2) generators and seeded sample batches."""

import pytest
from hypothesis import strategies as st

from models.exactfield import RATIONALS, EisensteinScalar
from services.sna import GENERATOR_NAMES, SnaSpec, generator, random_elements

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=10)
eisenstein = st.builds(EisensteinScalar, rationals, rationals)


@pytest.fixture(scope="session")
def gens():
    return {name: generator(name, RATIONALS) for name in GENERATOR_NAMES}


@pytest.fixture(scope="session")
def sna2():
    return SnaSpec(2)


@pytest.fixture(scope="session")
def sna3():
    return SnaSpec(3)


@pytest.fixture(scope="session")
def sna2_samples(sna2):
    return random_elements(sna2, 12, seed=0, bound=10)


@pytest.fixture(scope="session")
def sna3_samples(sna3):
    return random_elements(sna3, 8, seed=1, bound=10)
