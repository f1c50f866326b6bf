import numpy as np
import pytest

from confspace.permgroup import Configuration


def random_configuration(rng, n, d=3, scale=1.0):
    return Configuration(rng.uniform(-scale, scale, size=(n, d)))


def random_free_configuration(rng, n, d=3, scale=1.0, min_sep=0.1):
    while True:
        config = random_configuration(rng, n, d, scale)
        if config.min_separation() >= min_sep:
            return config


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
