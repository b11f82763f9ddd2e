"""Exact and Monte Carlo miss-detection and false-alarm probabilities."""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import numpy as np
from scipy.special import gammaln, xlogy

from ..core.errors import InvalidInput, TooLarge
from ..method_of_types.enumeration import MAX_TYPES, type_count
from .rules import DecisionRule, inclusion_matrix, type_stacks
from .scenario import Scenario

# Largest number of type pairs exact_errors will fold over
MAX_TYPE_PAIRS = 10**7
# Samples drawn per generator stream chunk
MC_CHUNK = 4096


@dataclass
class ErrorReport:
    """Miss-detection per (P1, P2) index pair and false alarm per Q index."""

    p_md: Dict[Tuple[int, int], float]
    p_fa: Dict[int, float]
    n1: int
    n2: int
    method: str = "exact"
    trials: Optional[int] = None
    seed: Optional[int] = None
    p_md_stderr: Dict[Tuple[int, int], float] = field(default_factory=dict)
    p_fa_stderr: Dict[int, float] = field(default_factory=dict)

    @property
    def worst_pair(self) -> Tuple[int, int]:
        """First pair in index order with the largest miss-detection probability."""
        best = next(iter(self.p_md))
        for pair, value in self.p_md.items():
            if value > self.p_md[best]:
                best = pair
        return best

    @property
    def worst_p_md(self) -> float:
        return self.p_md[self.worst_pair]

    @property
    def worst_p_fa(self) -> float:
        return max(self.p_fa.values())

    def to_dict(self) -> Dict[str, Any]:
        doc: Dict[str, Any] = {"method": self.method, "n1": self.n1, "n2": self.n2}
        if self.method == "monte_carlo":
            doc["trials"] = self.trials
            doc["seed"] = self.seed
        doc["p_md"] = [
            {"p1": i, "p2": j, "value": value, **self._stderr(self.p_md_stderr, (i, j))}
            for (i, j), value in self.p_md.items()
        ]
        doc["p_fa"] = [
            {"q": k, "value": value, **self._stderr(self.p_fa_stderr, k)}
            for k, value in self.p_fa.items()
        ]
        return doc

    @staticmethod
    def _stderr(table: Dict, key) -> Dict[str, float]:
        return {"stderr": table[key]} if key in table else {}


def _type_probabilities(counts: np.ndarray, n: int, p: np.ndarray) -> np.ndarray:
    """P^n(T_t) for every count row, via log |T_t| + sum_x t(x) ln P(x)."""
    if n == 0:
        return np.ones(counts.shape[0])
    log_size = gammaln(n + 1) - gammaln(counts + 1).sum(axis=1)
    log_seq = xlogy(counts, p).sum(axis=1)
    return np.exp(np.minimum(log_size + log_seq, 0.0))


def _check_pairs(scenario: Scenario, limit: int) -> None:
    k = scenario.alphabet_size
    m1 = type_count(scenario.n1, k)
    m2 = type_count(scenario.n2, k) if scenario.n2 > 0 else 1
    if m1 * m2 > limit:
        raise TooLarge(
            f"{m1} x {m2} type pairs at n1={scenario.n1}, n2={scenario.n2} exceed {limit}",
            "hyptest",
        )


def exact_errors(
    scenario: Scenario, rule: DecisionRule, limit: int = MAX_TYPE_PAIRS
) -> ErrorReport:
    """Sum type-class probabilities over the rule's acceptance region and its complement.

    Raises:
        TooLarge: if the number of type pairs exceeds limit
    """
    _check_pairs(scenario, limit)
    counts1, counts2 = type_stacks(scenario, MAX_TYPES)
    included = inclusion_matrix(rule, scenario, counts1, counts2).astype(float)
    excluded = 1.0 - included
    n1, n2 = scenario.n1, scenario.n2

    p_md: Dict[Tuple[int, int], float] = {}
    for i, P1 in enumerate(scenario.family_p1):
        a = _type_probabilities(counts1, n1, P1.probs)
        for j, P2 in enumerate(scenario.family_p2):
            b = _type_probabilities(counts2, n2, P2.probs)
            p_md[(i, j)] = float(np.clip(a @ excluded @ b, 0.0, 1.0))
    p_fa: Dict[int, float] = {}
    for k, Q in enumerate(scenario.family_q):
        a = _type_probabilities(counts1, n1, Q.probs)
        b = _type_probabilities(counts2, n2, Q.probs)
        p_fa[k] = float(np.clip(a @ included @ b, 0.0, 1.0))
    return ErrorReport(p_md, p_fa, n1, n2)


def _stream(seed: int, stream: int, chunk: int) -> np.random.Generator:
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(stream, chunk))
    return np.random.Generator(np.random.Philox(sequence))


def _hit_rate(
    rule: DecisionRule,
    scenario: Scenario,
    p1: np.ndarray,
    p2: np.ndarray,
    trials: int,
    seed: int,
    stream: int,
    want_included: bool,
) -> float:
    hits = 0
    for chunk, start in enumerate(range(0, trials, MC_CHUNK)):
        size = min(MC_CHUNK, trials - start)
        rng = _stream(seed, stream, chunk)
        x = rng.multinomial(scenario.n1, p1, size=size)
        y = rng.multinomial(scenario.n2, p2, size=size)
        inside = inclusion_matrix(rule, scenario, x, y, aligned=True)
        hits += int(np.count_nonzero(inside if want_included else ~inside))
    return hits / trials


def monte_carlo_errors(
    scenario: Scenario, rule: DecisionRule, trials: int, seed: int
) -> ErrorReport:
    """Frequency estimates of the same probabilities as exact_errors.

    Chunk c of stream s draws from Philox keyed by (seed, s, c), so estimates do
    not depend on evaluation order.
    """
    if trials < 1:
        raise InvalidInput(f"trials must be >= 1, got {trials}", "hyptest")
    if seed < 0:
        raise InvalidInput(f"seed must be >= 0, got {seed}", "hyptest")

    def stderr(p: float) -> float:
        return math.sqrt(p * (1.0 - p) / trials)

    p_md: Dict[Tuple[int, int], float] = {}
    md_err: Dict[Tuple[int, int], float] = {}
    stream = 0
    for i, P1 in enumerate(scenario.family_p1):
        for j, P2 in enumerate(scenario.family_p2):
            value = _hit_rate(rule, scenario, P1.probs, P2.probs, trials, seed, stream, False)
            p_md[(i, j)], md_err[(i, j)] = value, stderr(value)
            stream += 1
    p_fa: Dict[int, float] = {}
    fa_err: Dict[int, float] = {}
    for k, Q in enumerate(scenario.family_q):
        value = _hit_rate(rule, scenario, Q.probs, Q.probs, trials, seed, stream, True)
        p_fa[k], fa_err[k] = value, stderr(value)
        stream += 1
    return ErrorReport(
        p_md, p_fa, scenario.n1, scenario.n2, "monte_carlo", trials, seed, md_err, fa_err
    )
