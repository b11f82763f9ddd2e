"""Seeded random instances for the property suite and the tests."""

import zlib
from typing import List, Sequence

import numpy as np

from ..core.types import Channel, Distribution, make_channel, make_distribution
from ..hyptest.scenario import Scenario

# Weight of the uniform component mixed into "bounded" draws
UNIFORM_MIX = 0.1


def property_rng(seed: int, name: str) -> np.random.Generator:
    """Generator for one named property, independent of the order properties run in."""
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(zlib.crc32(name.encode()),))
    return np.random.default_rng(sequence)


def random_distribution(
    rng: np.random.Generator, k: int, mix: float = 0.0, zeros: bool = False
) -> Distribution:
    """Dirichlet(1, ..., 1) draw, optionally mixed with uniform or with symbols zeroed out.

    Args:
        rng: Random generator
        k: Alphabet size
        mix: Weight of the uniform distribution in the mixture
        zeros: Zero out a random subset of symbols (at least one survives)
    """
    p = rng.dirichlet(np.ones(k))
    if mix > 0:
        p = (1.0 - mix) * p + mix / k
    if zeros and k > 1:
        drop = rng.random(k) < 0.3
        drop[rng.integers(k)] = False
        p = np.where(drop, 0.0, p)
    return make_distribution(p)


def random_channel(
    rng: np.random.Generator, inputs: int, outputs: int, mix: float = 0.0
) -> Channel:
    rows = [random_distribution(rng, outputs, mix).probs for _ in range(inputs)]
    return make_channel(rows)


def random_family(
    rng: np.random.Generator, size: int, k: int, mix: float = UNIFORM_MIX
) -> List[Distribution]:
    return [random_distribution(rng, k, mix) for _ in range(size)]


def mixture(first: Distribution, second: Distribution, weight: float) -> Distribution:
    return make_distribution(weight * first.probs + (1.0 - weight) * second.probs)


def channel_mixture(first: Channel, second: Channel, weight: float) -> Channel:
    return make_channel(weight * first.rows + (1.0 - weight) * second.rows)


def random_scenario(
    rng: np.random.Generator,
    lambdas: Sequence[float] = (0.5, 1.0, 2.0),
    alphabets: Sequence[int] = (2, 3),
    n1: int = 2,
) -> Scenario:
    """Families of one or two members over a binary or ternary alphabet."""
    k = int(rng.choice(alphabets))
    lam = float(rng.choice(lambdas))
    families = [random_family(rng, int(rng.integers(1, 3)), k) for _ in range(3)]
    return Scenario(tuple(families[0]), tuple(families[1]), tuple(families[2]), lam, n1)


def symmetric_binary_scenario(n1: int = 8) -> Scenario:
    """P1 = (0.9, 0.1), P2 = (0.1, 0.9), Q = (0.5, 0.5), lambda = 1."""
    return Scenario(
        (Distribution(np.array([0.9, 0.1])),),
        (Distribution(np.array([0.1, 0.9])),),
        (Distribution(np.array([0.5, 0.5])),),
        1.0,
        n1,
    )
