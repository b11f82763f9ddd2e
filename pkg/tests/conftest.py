"""Shared fixtures: seeded generators and random distributions and channels."""

import json

import numpy as np
import pytest

from renyi_lab.core.types import Distribution
from renyi_lab.optim import DEFAULT_SOLVER_CONFIG
from renyi_lab.verify.instances import random_channel, random_distribution


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def make_dist(rng):
    """Factory for random distributions over k symbols."""

    def factory(k: int, mix: float = 0.0, zeros: bool = False) -> Distribution:
        return random_distribution(rng, k, mix=mix, zeros=zeros)

    return factory


@pytest.fixture
def make_channel_factory(rng):
    """Factory for random channels."""

    def factory(inputs: int, outputs: int, mix: float = 0.0):
        return random_channel(rng, inputs, outputs, mix)

    return factory


@pytest.fixture
def solver():
    return DEFAULT_SOLVER_CONFIG.model_copy(update={"seed": 3})


@pytest.fixture
def write_json(tmp_path):
    """Write a JSON document into the test's temporary directory and return its path."""

    def writer(name: str, doc) -> str:
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)

    return writer
