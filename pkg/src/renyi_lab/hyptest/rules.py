"""Decision rules on pairs of empirical types.

A rule declares "phenomena" when the sample pair lies in its acceptance
region. Every rule depends on the samples only through the two types.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Tuple

import numpy as np

from ..core.errors import DenominatorMismatch, InvalidInput
from ..measures.shannon import pairwise_kl
from ..method_of_types.enumeration import MAX_TYPES, EmpiricalType, count_matrix
from .scenario import Scenario

# Rows of the first type stack processed per block when building a matrix
_BLOCK_ROWS = 4096


def delta_n(n: int, alphabet_size: int) -> float:
    """delta_n = |X| log2(n) / n; delta_1 = 0."""
    if n < 1:
        raise InvalidInput(f"delta_n needs n >= 1, got {n}", "hyptest")
    return alphabet_size * math.log2(n) / n


class RuleKind(str, Enum):
    SINGLE_SENSOR = "single"
    UNION = "union"
    MODIFIED = "modified"
    DISJOINT_SUPPORT = "disjoint"


@dataclass(frozen=True)
class Thresholds:
    sensor1: float
    sensor2: float
    joint: float


@dataclass(frozen=True)
class DecisionRule:
    """Rule kind plus its threshold schedule.

    The schedule is delta_n scaled by threshold_scale; threshold_override
    replaces every threshold with a fixed value.
    """

    kind: RuleKind = RuleKind.MODIFIED
    threshold_scale: float = 1.0
    threshold_override: Optional[float] = None

    @classmethod
    def of(cls, kind) -> "DecisionRule":
        return cls(RuleKind(kind))

    def thresholds(self, scenario: Scenario) -> Thresholds:
        if self.threshold_override is not None:
            t = float(self.threshold_override)
            return Thresholds(t, t, t)
        k = scenario.alphabet_size
        d1 = self.threshold_scale * delta_n(scenario.n1, k)
        d2 = self.threshold_scale * delta_n(scenario.n2, k) if scenario.n2 > 0 else 0.0
        return Thresholds(d1, d2, max(d1, d2))


def _divergences(counts: np.ndarray, n: int, qs: np.ndarray) -> np.ndarray:
    """D(t/n || Q) for every count row and every Q; zeros for the empty type."""
    if n == 0:
        return np.zeros((counts.shape[0], qs.shape[0]))
    return pairwise_kl(counts / n, qs)


def _included(
    rule: DecisionRule,
    thresholds: Thresholds,
    d1: np.ndarray,
    d2: np.ndarray,
    disjoint: np.ndarray,
    has_sensor2: bool,
) -> np.ndarray:
    """Acceptance test on broadcastable divergence stacks (last axis indexes Q)."""
    shape = np.broadcast_shapes(d1.shape[:-1], d2.shape[:-1])
    if rule.kind is RuleKind.DISJOINT_SUPPORT:
        return np.broadcast_to(disjoint & has_sensor2, shape)
    first = d1.min(axis=-1) >= thresholds.sensor1
    if rule.kind is RuleKind.SINGLE_SENSOR:
        return np.broadcast_to(first, shape)
    if rule.kind is RuleKind.UNION:
        second = (d2.min(axis=-1) >= thresholds.sensor2) & has_sensor2
        return np.broadcast_to(first | second, shape)
    return np.broadcast_to(np.maximum(d1, d2).min(axis=-1) >= thresholds.joint, shape)


def _sensor2_counts(scenario: Scenario, limit: int) -> np.ndarray:
    if scenario.n2 == 0:
        return np.zeros((1, scenario.alphabet_size), dtype=np.int64)
    return count_matrix(scenario.n2, scenario.alphabet_size, limit)


def type_stacks(scenario: Scenario, limit: int = MAX_TYPES) -> Tuple[np.ndarray, np.ndarray]:
    """Count matrices of Sensor 1 and Sensor 2 types in colex order.

    With n2 = 0 Sensor 2 has the single empty type.
    """
    return count_matrix(scenario.n1, scenario.alphabet_size, limit), _sensor2_counts(scenario, limit)


def inclusion_matrix(
    rule: DecisionRule,
    scenario: Scenario,
    counts1: np.ndarray,
    counts2: np.ndarray,
    aligned: bool = False,
) -> np.ndarray:
    """Evaluate a rule on stacks of count vectors.

    Args:
        rule: Decision rule
        scenario: Scenario supplying Q, n1 and n2
        counts1: (m1, k) Sensor 1 counts
        counts2: (m2, k) Sensor 2 counts
        aligned: Pair row i with row i (m1 == m2) instead of forming all pairs

    Returns:
        Boolean array of shape (m1,) when aligned, else (m1, m2)
    """
    qs = scenario.stack("family_q")
    thresholds = rule.thresholds(scenario)
    has2 = scenario.n2 > 0
    d1 = _divergences(counts1, scenario.n1, qs)
    d2 = _divergences(counts2, scenario.n2, qs)
    on1, on2 = counts1 > 0, counts2 > 0
    if aligned:
        disjoint = ~np.any(on1 & on2, axis=1)
        return np.array(_included(rule, thresholds, d1, d2, disjoint, has2))
    overlap = on1.astype(np.int64) @ on2.T.astype(np.int64)
    out = np.empty((counts1.shape[0], counts2.shape[0]), dtype=bool)
    for start in range(0, counts1.shape[0], _BLOCK_ROWS):
        block = slice(start, start + _BLOCK_ROWS)
        out[block] = _included(
            rule, thresholds, d1[block, None, :], d2[None, :, :], overlap[block] == 0, has2
        )
    return out


def rule_contains(
    rule: DecisionRule, scenario: Scenario, t1: EmpiricalType, t2: EmpiricalType
) -> bool:
    """Whether the type pair (t1, t2) lies in the rule's acceptance region.

    Raises:
        DenominatorMismatch: unless t1 has denominator n1 and t2 has n2
    """
    if t1.n != scenario.n1 or t2.n != scenario.n2:
        raise DenominatorMismatch(
            f"types have denominators ({t1.n}, {t2.n}), scenario needs "
            f"({scenario.n1}, {scenario.n2})"
        )
    if t1.alphabet_size != scenario.alphabet_size or t2.alphabet_size != scenario.alphabet_size:
        raise InvalidInput("types and scenario use different alphabets", "hyptest")
    counts1 = np.asarray([t1.counts], dtype=np.int64)
    counts2 = np.asarray([t2.counts], dtype=np.int64)
    return bool(inclusion_matrix(rule, scenario, counts1, counts2, aligned=True)[0])


def rule_overlap(
    first: DecisionRule, second: DecisionRule, scenario: Scenario, limit: int = MAX_TYPES
) -> Dict[str, int]:
    """Count type pairs by membership in two rules' acceptance regions."""
    counts1, counts2 = type_stacks(scenario, limit)
    a = inclusion_matrix(first, scenario, counts1, counts2)
    b = inclusion_matrix(second, scenario, counts1, counts2)
    return {
        "both": int(np.count_nonzero(a & b)),
        "first_only": int(np.count_nonzero(a & ~b)),
        "second_only": int(np.count_nonzero(~a & b)),
        "neither": int(np.count_nonzero(~a & ~b)),
    }
