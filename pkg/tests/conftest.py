import random

import pytest


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=20240101, help="seed for randomized tests")


@pytest.fixture
def seed(request):
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed):
    return random.Random(seed)
