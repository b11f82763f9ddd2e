"""Brute-force grid oracles over the probability simplex."""

import itertools
import math
from typing import Callable, Optional

import numpy as np

from ..core.errors import InvalidInput, TooLarge
from ..core.types import Optimum, make_distribution

MAX_GRID_POINTS = 5_000_000


def simplex_grid(k: int, step: float, limit: int = MAX_GRID_POINTS) -> np.ndarray:
    """All points of the k-simplex whose coordinates are multiples of step.

    Args:
        k: Number of coordinates
        step: Grid spacing; 1/step must be an integer
        limit: Largest admissible number of points

    Returns:
        Array of shape (num_points, k)
    """
    m = int(round(1.0 / step))
    if k < 1 or m < 1 or abs(m * step - 1.0) > 1e-9:
        raise InvalidInput(f"step {step} must divide 1 evenly", "optim")
    total = math.comb(m + k - 1, k - 1)
    if total > limit:
        raise TooLarge(f"grid with {total} points exceeds the limit {limit}", "optim")
    if k == 1:
        return np.ones((1, 1))
    # Stars and bars: k - 1 bar positions among m + k - 1 slots
    bars = np.fromiter(
        itertools.chain.from_iterable(itertools.combinations(range(m + k - 1), k - 1)),
        dtype=np.int64,
        count=total * (k - 1),
    ).reshape(total, k - 1)
    edges = np.hstack([np.full((total, 1), -1), bars, np.full((total, 1), m + k - 1)])
    counts = np.diff(edges, axis=1) - 1
    return counts / m


def grid_minimum(
    f: Callable[[np.ndarray], float],
    k: int,
    step: float,
    mask: Optional[np.ndarray] = None,
    vectorized: bool = False,
) -> Optimum:
    """Minimum of f over the simplex grid, optionally restricted to a face.

    Args:
        f: Function of a probability vector (or of a stack of them when vectorized)
        k: Number of coordinates
        step: Grid spacing
        mask: Boolean vector of allowed coordinates; others stay 0
        vectorized: f maps an (N, k) array to N values

    Returns:
        Optimum(value, grid point as a Distribution)
    """
    allowed = np.ones(k, dtype=bool) if mask is None else np.asarray(mask, dtype=bool)
    face = simplex_grid(int(allowed.sum()), step)
    points = np.zeros((face.shape[0], k))
    points[:, allowed] = face
    if vectorized:
        values = np.asarray(f(points), dtype=float)
    else:
        values = np.array([f(p) for p in points], dtype=float)
    best = int(np.argmin(values))
    return Optimum(float(values[best]), make_distribution(points[best]))


def grid_maximum(
    f: Callable[[np.ndarray], float],
    k: int,
    step: float,
    mask: Optional[np.ndarray] = None,
    vectorized: bool = False,
) -> Optimum:
    if vectorized:
        result = grid_minimum(lambda x: -np.asarray(f(x)), k, step, mask, vectorized=True)
    else:
        result = grid_minimum(lambda x: -f(x), k, step, mask)
    return Optimum(-result.value, result.point)
