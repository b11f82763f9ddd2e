"""Empirical types, their enumeration and type-class sizes."""

import math
from dataclasses import dataclass
from typing import Iterator, List, Tuple

import numpy as np
from scipy.special import gammaln

from ..core.errors import InvalidInput, TooLarge, ZeroMass
from ..core.types import Distribution

# Largest number of types enumerate_types will materialize
MAX_TYPES = 10**7
# Above this block length class sizes switch from exact integers to log-gamma
EXACT_SIZE_LIMIT = 60


@dataclass(frozen=True)
class EmpiricalType:
    """Count vector of a length-n sequence; n = 0 is the empty type."""

    counts: Tuple[int, ...]
    n: int

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if not counts:
            raise InvalidInput("a type needs at least one symbol", "method_of_types")
        if any(c < 0 for c in counts):
            raise InvalidInput("type counts must be non-negative", "method_of_types")
        if sum(counts) != self.n:
            raise InvalidInput(
                f"counts {counts} do not sum to n={self.n}", "method_of_types"
            )
        object.__setattr__(self, "counts", counts)

    @classmethod
    def of(cls, counts) -> "EmpiricalType":
        counts = tuple(int(c) for c in counts)
        return cls(counts, sum(counts))

    @property
    def alphabet_size(self) -> int:
        return len(self.counts)

    def frequencies(self) -> np.ndarray:
        if self.n == 0:
            raise ZeroMass("the empty type has no frequencies", "method_of_types")
        return np.asarray(self.counts, dtype=float) / self.n

    def as_distribution(self) -> Distribution:
        return Distribution(self.frequencies())


def type_count(n: int, alphabet_size: int) -> int:
    """|P^n(X)| = C(n + |X| - 1, |X| - 1)."""
    return math.comb(n + alphabet_size - 1, alphabet_size - 1)


def _colex(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    # Last coordinate outermost and ascending gives colexicographic order
    if k == 1:
        yield (n,)
        return
    for last in range(n + 1):
        for prefix in _colex(n - last, k - 1):
            yield prefix + (last,)


def iter_count_vectors(n: int, alphabet_size: int) -> Iterator[Tuple[int, ...]]:
    """Stream every non-negative integer vector of length alphabet_size summing to n."""
    if n < 0 or alphabet_size < 1:
        raise InvalidInput("need n >= 0 and alphabet_size >= 1", "method_of_types")
    return _colex(n, alphabet_size)


def iter_types(n: int, alphabet_size: int) -> Iterator[EmpiricalType]:
    """Lazily stream the types of denominator n in colexicographic order."""
    for counts in iter_count_vectors(n, alphabet_size):
        yield EmpiricalType(counts, n)


def count_matrix(n: int, alphabet_size: int, limit: int = MAX_TYPES) -> np.ndarray:
    """All count vectors as a (num_types, alphabet_size) integer array in colex order."""
    total = type_count(n, alphabet_size)
    if total > limit:
        raise TooLarge(
            f"{total} types of length {n} over {alphabet_size} symbols exceed the limit {limit}",
            "method_of_types",
        )
    return np.array(list(iter_count_vectors(n, alphabet_size)), dtype=np.int64).reshape(
        total, alphabet_size
    )


def enumerate_types(n: int, alphabet_size: int, limit: int = MAX_TYPES) -> List[EmpiricalType]:
    """Every type of denominator n over the alphabet, colexicographically ordered.

    Args:
        n: Sequence length, at least 1
        alphabet_size: Number of symbols, at least 1
        limit: Largest admissible number of types

    Returns:
        List of exactly C(n + |X| - 1, |X| - 1) distinct types

    Raises:
        TooLarge: if the number of types exceeds limit
    """
    if n < 1 or alphabet_size < 1:
        raise InvalidInput("need n >= 1 and alphabet_size >= 1", "method_of_types")
    total = type_count(n, alphabet_size)
    if total > limit:
        raise TooLarge(
            f"{total} types of length {n} over {alphabet_size} symbols exceed the limit {limit}",
            "method_of_types",
        )
    return list(iter_types(n, alphabet_size))


def type_class_size(t: EmpiricalType) -> int:
    """|T_Q| = n! / prod_x counts(x)!, as an exact integer."""
    size = math.factorial(t.n)
    for c in t.counts:
        size //= math.factorial(c)
    return size


def log2_type_class_size(t: EmpiricalType) -> float:
    """log2 |T_Q|; exact integers up to n = 60, log-gamma beyond."""
    if t.n <= EXACT_SIZE_LIMIT:
        return math.log2(type_class_size(t))
    counts = np.asarray(t.counts, dtype=float)
    return float((gammaln(t.n + 1) - gammaln(counts + 1).sum()) / math.log(2.0))


def type_size_bounds_hold(t: EmpiricalType) -> bool:
    """Exact check of |P^n|^{-1} 2^{nH(Q)} <= |T_Q| <= 2^{nH(Q)}.

    With 2^{nH(Q)} = n^n / prod c^c the check is pure integer arithmetic:
    |T| prod c^c <= n^n <= |P^n| |T| prod c^c.
    """
    size = type_class_size(t)
    weight = 1
    for c in t.counts:
        weight *= c**c
    n_pow = t.n**t.n
    return size * weight <= n_pow <= type_count(t.n, t.alphabet_size) * size * weight
