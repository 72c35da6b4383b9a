import random

import pytest

from helpers import corpus_names, load


@pytest.fixture
def rng():
    return random.Random(20260815)


@pytest.fixture(scope="session")
def corpus():
    return {name: load(name) for name in corpus_names()}


@pytest.fixture
def toeplitz():
    return load("toeplitz")


@pytest.fixture
def fiber():
    return load("fiber")


@pytest.fixture
def fork2():
    return load("fork2")


@pytest.fixture
def loop():
    return load("loop")
