"""Sequence and type-class probabilities and the deviation bound."""

import math
from typing import Any, Dict, List, NamedTuple

from ..core.errors import AlphabetMismatch
from ..core.types import Distribution
from ..measures.shannon import entropy, kl_divergence
from .enumeration import (
    MAX_TYPES,
    EmpiricalType,
    enumerate_types,
    log2_type_class_size,
    type_class_size,
    type_count,
    type_size_bounds_hold,
)

# Relative tolerance for the exponent-versus-product comparison
PRODUCT_RTOL = 1e-10


class DeviationCheck(NamedTuple):
    exact_tail: float
    bound: float


def _check(P: Distribution, t: EmpiricalType) -> None:
    if P.alphabet_size != t.alphabet_size:
        raise AlphabetMismatch(
            f"type over {t.alphabet_size} symbols, distribution over {P.alphabet_size}",
            "method_of_types",
        )


def log2_sequence_probability(P: Distribution, t: EmpiricalType) -> float:
    """log2 P^n(x^n) = sum_x counts(x) log2 P(x) for any sequence of type t."""
    _check(P, t)
    total = 0.0
    for c, p in zip(t.counts, P.probs):
        if c == 0:
            continue
        if p == 0:
            return -math.inf
        total += c * math.log2(p)
    return total


def sequence_probability_exponent(P: Distribution, t: EmpiricalType) -> float:
    """D(Q||P) + H(Q) for Q = t/n, so that P^n(x^n) = 2^{-n (D(Q||P) + H(Q))}.

    +inf when Q puts mass where P has none.
    """
    _check(P, t)
    Q = t.as_distribution()
    divergence = kl_divergence(Q, P)
    if math.isinf(divergence):
        return math.inf
    return divergence + entropy(Q)


def exponent_matches_product(P: Distribution, t: EmpiricalType) -> bool:
    """Compare 2^{-n (D(Q||P) + H(Q))} with the direct product prod P(x)^{counts(x)} in logs."""
    direct = log2_sequence_probability(P, t)
    exponent = sequence_probability_exponent(P, t)
    if math.isinf(exponent) or math.isinf(direct):
        return math.isinf(exponent) and math.isinf(direct)
    via_exponent = -t.n * exponent
    return abs(via_exponent - direct) <= PRODUCT_RTOL * max(abs(direct), 1.0)


def type_class_probability(P: Distribution, t: EmpiricalType) -> float:
    """P^n(T_Q) = |T_Q| prod_x P(x)^{counts(x)}, combined in the log domain."""
    log_seq = log2_sequence_probability(P, t)
    if math.isinf(log_seq):
        return 0.0
    return float(min(2.0 ** (log2_type_class_size(t) + log_seq), 1.0))


def deviation_bound_check(
    P: Distribution, n: int, delta: float, limit: int = MAX_TYPES
) -> DeviationCheck:
    """Exact P^n{D(pi||P) >= delta} next to the bound |P^n(X)| 2^{-n delta}.

    Raises:
        TooLarge: if enumerating the types of length n is infeasible
    """
    tail = 0.0
    for t in enumerate_types(n, P.alphabet_size, limit):
        if kl_divergence(t.as_distribution(), P) >= delta:
            tail += type_class_probability(P, t)
    bound = type_count(n, P.alphabet_size) * 2.0 ** (-n * delta)
    return DeviationCheck(min(tail, 1.0), bound)


def lemma_table(P: Distribution, n: int, delta: float, limit: int = MAX_TYPES) -> Dict[str, Any]:
    """Per-type checks of the four type facts, plus the deviation bound.

    Returns:
        Dict with a "types" list and a "summary" block, ready for rendering
    """
    rows: List[Dict[str, Any]] = []
    types = enumerate_types(n, P.alphabet_size, limit)
    size_total = 0
    probability_total = 0.0
    for t in types:
        size = type_class_size(t)
        size_total += size
        probability = type_class_probability(P, t)
        probability_total += probability
        rows.append(
            {
                "counts": list(t.counts),
                "class_size": size,
                "size_bounds_hold": type_size_bounds_hold(t),
                "exponent": sequence_probability_exponent(P, t),
                "exponent_matches_product": exponent_matches_product(P, t),
                "probability": probability,
            }
        )
    deviation = deviation_bound_check(P, n, delta, limit)
    summary = {
        "n": n,
        "alphabet_size": P.alphabet_size,
        "type_count": type_count(n, P.alphabet_size),
        "enumerated": len(types),
        "count_matches": len(types) == type_count(n, P.alphabet_size),
        "class_sizes_sum_to_power": size_total == P.alphabet_size**n,
        "total_probability": probability_total,
        "all_size_bounds_hold": all(r["size_bounds_hold"] for r in rows),
        "all_exponents_match": all(r["exponent_matches_product"] for r in rows),
        "delta": delta,
        "deviation_tail": deviation.exact_tail,
        "deviation_bound": deviation.bound,
        "deviation_bound_holds": deviation.exact_tail <= deviation.bound,
    }
    return {"types": rows, "summary": summary}
