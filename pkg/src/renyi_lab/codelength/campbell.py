"""Exponentially weighted codelengths and codes matched to the tilted distribution.

For a length assignment l and lambda > 0 the weighted codelength is
(1/lambda) log2 sum_x P(x) 2^{lambda l(x)}. Its minimum over Kraft-feasible
integer assignments lies between H_{1/(1+lambda)}(P) and that value plus one.
"""

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import NamedTuple, Sequence, Tuple, Union

import numpy as np
from scipy.special import logsumexp

from ..core.errors import InvalidInput, KraftViolation, KraftWarning, ShapeMismatch, TooLarge
from ..core.types import Distribution, check_same_alphabet
from ..measures.shannon import LN2
from ..variational.functionals import optimal_q_entropy

# Largest alphabet and length the exhaustive search accepts
MAX_BRUTE_FORCE_ALPHABET = 6
MAX_BRUTE_FORCE_LENGTH = 12
# Length given to symbols outside the support of P
DEFAULT_MAX_LEN = 12
# Absorbs rounding in -log2 Q* for dyadic Q*
_CEIL_SLACK = 1e-12


def _kraft_exact(lengths: Sequence[int]) -> Fraction:
    return sum((Fraction(1, 2**length) for length in lengths), Fraction(0))


def kraft_sum(lengths: Sequence[int]) -> float:
    """sum_x 2^{-l(x)}."""
    return float(_kraft_exact([int(length) for length in lengths]))


@dataclass(frozen=True)
class CodelengthAssignment:
    """Positive integer codelength per symbol, satisfying Kraft's inequality."""

    lengths: Tuple[int, ...]

    def __post_init__(self):
        lengths = tuple(int(length) for length in self.lengths)
        if not lengths:
            raise InvalidInput("an assignment needs at least one symbol", "codelength")
        if any(length < 1 for length in lengths):
            raise InvalidInput(f"codelengths must be positive integers, got {lengths}", "codelength")
        if _kraft_exact(lengths) > 1:
            raise KraftViolation(
                f"Kraft sum {kraft_sum(lengths):.6g} > 1 for lengths {lengths}", "codelength"
            )
        object.__setattr__(self, "lengths", lengths)

    def __len__(self) -> int:
        return len(self.lengths)

    @property
    def kraft_sum(self) -> float:
        return kraft_sum(self.lengths)

    def tolist(self) -> list:
        return list(self.lengths)


class CodelengthOptimum(NamedTuple):
    best: CodelengthAssignment
    value: float


def _check_lambda(lam: float) -> float:
    if not lam > 0 or not math.isfinite(lam):
        raise InvalidInput(f"lambda must be a positive finite number, got {lam}", "codelength")
    return float(lam)


def _lengths(P: Distribution, lengths) -> np.ndarray:
    if isinstance(lengths, CodelengthAssignment):
        values = np.asarray(lengths.lengths, dtype=float)
    else:
        values = np.asarray(list(lengths), dtype=float)
        if values.ndim != 1 or np.any(values < 0) or np.any(values != np.round(values)):
            raise InvalidInput("codelengths must be non-negative integers", "codelength")
        if values.size == P.alphabet_size and _kraft_exact(values.astype(int).tolist()) > 1:
            warnings.warn(
                f"lengths {values.astype(int).tolist()} violate Kraft's inequality",
                KraftWarning,
                stacklevel=3,
            )
    if values.size != P.alphabet_size:
        raise ShapeMismatch(
            f"{values.size} lengths for an alphabet of {P.alphabet_size} symbols", "codelength"
        )
    return values


def weighted_codelength(
    P: Distribution, lengths: Union[CodelengthAssignment, Sequence[int]], lam: float
) -> float:
    """(1/lambda) log2 sum_x P(x) 2^{lambda l(x)}.

    Plain sequences that break Kraft's inequality are still evaluated but raise
    a KraftWarning.
    """
    lam = _check_lambda(lam)
    values = _lengths(P, lengths)
    on = P.probs > 0
    log_total = logsumexp(np.log(P.probs[on]) + lam * values[on] * LN2)
    return float(log_total / (lam * LN2))


def ideal_codelength(P: Distribution, Q: Distribution, lam: float) -> float:
    """(1/lambda) log2 sum_x P(x) Q(x)^{-lambda}, the functional with l = -log2 Q.

    At the tilted Q* of order 1/(1+lambda) it equals H_{1/(1+lambda)}(P).
    """
    lam = _check_lambda(lam)
    check_same_alphabet(P, Q, module="codelength")
    on = P.probs > 0
    if np.any(Q.probs[on] == 0):
        return math.inf
    log_total = logsumexp(np.log(P.probs[on]) - lam * np.log(Q.probs[on]))
    return float(log_total / (lam * LN2))


def campbell_code(P: Distribution, lam: float, max_len: int = DEFAULT_MAX_LEN) -> CodelengthAssignment:
    """l(x) = ceil(-log2 Q*(x)) with Q* the order-1/(1+lambda) tilting of P.

    Lengths are clamped to at least 1 and symbols outside S(P) get max_len.
    When the support lengths already fill the Kraft budget, the longest one is
    extended by a bit so that the unused symbols still fit.
    """
    lam = _check_lambda(lam)
    q_star = optimal_q_entropy(P, 1.0 / (1.0 + lam)).probs
    on = P.probs > 0
    lengths = np.full(P.alphabet_size, int(max_len), dtype=np.int64)
    ideal = -np.log2(q_star[on])
    lengths[on] = np.maximum(1, np.ceil(ideal - _CEIL_SLACK)).astype(np.int64)
    outside = int(np.count_nonzero(~on))
    if outside and _kraft_exact(lengths[on].tolist()) + Fraction(outside, 2**max_len) > 1:
        support = np.flatnonzero(on)
        longest = support[np.argmax(lengths[on])]
        lengths[longest] += 1
        lengths[~on] = max(int(max_len), int(lengths[longest]) + math.ceil(math.log2(outside)))
    return CodelengthAssignment(tuple(int(length) for length in lengths))


def brute_force_min_codelength(
    P: Distribution, lam: float, max_len: int = MAX_BRUTE_FORCE_LENGTH
) -> CodelengthOptimum:
    """Exact minimum of the weighted codelength over Kraft-feasible lengths in [1, max_len].

    The objective is increasing in each length, so an optimal assignment gives
    non-decreasing lengths to symbols sorted by decreasing probability; only
    those multisets are enumerated.

    Raises:
        TooLarge: for more than 6 symbols or max_len above 12
    """
    lam = _check_lambda(lam)
    k = P.alphabet_size
    if k > MAX_BRUTE_FORCE_ALPHABET or max_len > MAX_BRUTE_FORCE_LENGTH:
        raise TooLarge(
            f"exhaustive search limited to {MAX_BRUTE_FORCE_ALPHABET} symbols and lengths "
            f"<= {MAX_BRUTE_FORCE_LENGTH}, got {k} and {max_len}",
            "codelength",
        )
    if max_len < 1 or 2**max_len < k:
        raise InvalidInput(f"no prefix code with {k} symbols fits in {max_len} bits", "codelength")
    order = np.argsort(-P.probs, kind="stable")
    sorted_probs = P.probs[order]
    on = sorted_probs > 0
    log_p = np.log(sorted_probs[on])
    budget = 2**max_len
    best_value = math.inf
    best_lengths: Tuple[int, ...] = ()
    for candidate in combinations_with_replacement(range(1, max_len + 1), k):
        if sum(2 ** (max_len - length) for length in candidate) > budget:
            continue
        exponents = lam * LN2 * np.asarray(candidate, dtype=float)[on]
        value = float(logsumexp(log_p + exponents) / (lam * LN2))
        if value < best_value:
            best_value, best_lengths = value, candidate
    lengths = np.empty(k, dtype=np.int64)
    lengths[order] = best_lengths
    return CodelengthOptimum(CodelengthAssignment(tuple(int(v) for v in lengths)), best_value)
