"""Campbell's exponentially weighted codelengths."""

from .campbell import (
    DEFAULT_MAX_LEN,
    MAX_BRUTE_FORCE_ALPHABET,
    MAX_BRUTE_FORCE_LENGTH,
    CodelengthAssignment,
    CodelengthOptimum,
    brute_force_min_codelength,
    campbell_code,
    ideal_codelength,
    kraft_sum,
    weighted_codelength,
)

__all__ = [
    "DEFAULT_MAX_LEN",
    "MAX_BRUTE_FORCE_ALPHABET",
    "MAX_BRUTE_FORCE_LENGTH",
    "CodelengthAssignment",
    "CodelengthOptimum",
    "brute_force_min_codelength",
    "campbell_code",
    "ideal_codelength",
    "kraft_sum",
    "weighted_codelength",
]
