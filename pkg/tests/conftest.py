import random

import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--seed",
        type=int,
        default=20250815,
        help="seed for the randomized property harness",
    )


@pytest.fixture
def rng(request):
    return random.Random(request.config.getoption("--seed"))
