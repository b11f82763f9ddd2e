"""Miss-detection exponents: achievable value, Renyi lower bound and its refinements.

All formulas use the realized ratio n2 / n1 of the scenario in place of the
nominal lambda.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from rich.console import Console

from ..core.errors import AlphaOutOfRange, DegenerateTilting, InvalidInput, TooLarge
from ..core.extended import ext_add, ext_scale
from ..core.types import Distribution, max_norm_distance
from ..measures.renyi import AlphaVector, family_divergence, generalized_renyi_divergence
from ..measures.shannon import pairwise_kl
from ..method_of_types.enumeration import type_count
from ..variational.functionals import optimal_q_divergence
from .probabilities import MAX_TYPE_PAIRS, exact_errors
from .rules import DecisionRule, RuleKind, inclusion_matrix, type_stacks
from .scenario import Scenario

console = Console(stderr=True)

# Default tolerance for the closure membership test
EQUALITY_TOL = 1e-9
# Slack on the upper end of the alpha range
_ALPHA_SLACK = 1e-12
# Fractions of 1/(1+lambda) in the default alpha grid
ALPHA_GRID_FRACTIONS = (0.001, 0.01, 0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.9, 1.0)


class EqualityReport(NamedTuple):
    """Closure membership of Q* in the noise family, next to the exponent gap."""

    distance: float
    gap: float
    in_closure: bool
    exponents_equal: bool

    @property
    def consistent(self) -> bool:
        return self.in_closure == self.exponents_equal


@dataclass
class TrendPoint:
    n1: int
    n2: int
    n: int
    pair: Tuple[int, int]
    p_md: float
    exponent: float
    envelope: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n1": self.n1,
            "n2": self.n2,
            "n": self.n,
            "p1": self.pair[0],
            "p2": self.pair[1],
            "p_md": self.p_md,
            "exponent": self.exponent,
            "envelope": self.envelope,
        }


def _require_positive_lambda(scenario: Scenario) -> float:
    lam = scenario.realized_lambda
    if lam <= 0:
        raise InvalidInput("this bound needs lambda > 0 (n2 >= 1)", "hyptest")
    return lam


def achievable_exponent(scenario: Scenario) -> float:
    """(1+lambda)^{-1} min_Q (D(Q||P1) + lambda D(Q||P2)), each D minimized over its family."""
    lam = scenario.realized_lambda
    qs = scenario.stack("family_q")
    d1 = pairwise_kl(qs, scenario.stack("family_p1")).min(axis=1)
    d2 = pairwise_kl(qs, scenario.stack("family_p2")).min(axis=1)
    values = [
        ext_scale(1.0 / (1.0 + lam), ext_add(float(a), ext_scale(lam, float(b))))
        for a, b in zip(d1, d2)
    ]
    return min(values)


def renyi_lower_bound(scenario: Scenario) -> float:
    """lambda (1+lambda)^{-1} D_{1/(1+lambda)}(P1 family || P2 family)."""
    lam = _require_positive_lambda(scenario)
    divergence = family_divergence(scenario.family_p1, scenario.family_p2, 1.0 / (1.0 + lam))
    return ext_scale(lam / (1.0 + lam), divergence)


def _worst_noise_pairs(scenario: Scenario):
    lam = _require_positive_lambda(scenario)
    tilted: List[Tuple[Tuple[int, int], Distribution]] = []
    omitted: List[Tuple[int, int]] = []
    for i, P1 in enumerate(scenario.family_p1):
        for j, P2 in enumerate(scenario.family_p2):
            try:
                tilted.append(((i, j), optimal_q_divergence(P1, P2, 1.0 / (1.0 + lam))))
            except DegenerateTilting:
                omitted.append((i, j))
    return tilted, omitted


def worst_noise_family(scenario: Scenario) -> List[Distribution]:
    """Q* proportional to P1^{1/(1+lambda)} P2^{lambda/(1+lambda)} for every family pair.

    Pairs with disjoint supports have no Q* and are left out with a warning.
    """
    tilted, omitted = _worst_noise_pairs(scenario)
    if omitted:
        console.print(
            f"[yellow]hyptest: no worst-noise distribution for pairs {omitted} "
            f"(disjoint supports)[/yellow]"
        )
    return [q for _, q in tilted]


def equality_report(scenario: Scenario, tol: float = EQUALITY_TOL) -> EqualityReport:
    """Distance from the noise family to the worst-noise family and the exponent gap."""
    family = worst_noise_family(scenario)
    if family:
        distance = min(max_norm_distance(q, q_star) for q in scenario.family_q for q_star in family)
    else:
        distance = math.inf
    achievable = achievable_exponent(scenario)
    lower = renyi_lower_bound(scenario)
    gap = 0.0 if achievable == lower else achievable - lower
    return EqualityReport(distance, gap, distance <= tol, abs(gap) <= tol)


def equality_condition(scenario: Scenario, tol: float = EQUALITY_TOL) -> bool:
    """Whether the noise family meets the worst-noise family within tol.

    The exponent gap is checked alongside; disagreement is reported as a
    ConditionMismatch diagnostic.
    """
    report = equality_report(scenario, tol)
    if not report.consistent:
        console.print(
            f"[yellow]hyptest: ConditionMismatch: distance to Q* = {report.distance:.3g}, "
            f"exponent gap = {report.gap:.3g} (tol {tol:.3g})[/yellow]"
        )
    return report.in_closure


def exponent_alpha(scenario: Scenario, alpha: float) -> float:
    """(1+lambda)^{-1} alpha^{-1} min over family triples of D_(alpha, lambda alpha, rest).

    Raises:
        AlphaOutOfRange: unless 0 < alpha <= 1/(1+lambda)
    """
    lam = scenario.realized_lambda
    upper = 1.0 / (1.0 + lam)
    if not (0 < alpha <= upper + _ALPHA_SLACK):
        raise AlphaOutOfRange(f"alpha must lie in (0, {upper:.6g}], got {alpha}")
    rest = max(1.0 - alpha - lam * alpha, 0.0)
    weights = np.array([alpha, lam * alpha, rest])
    vector = AlphaVector(weights / weights.sum())
    best = min(
        generalized_renyi_divergence([P1, P2, Q], vector)
        for P1 in scenario.family_p1
        for P2 in scenario.family_p2
        for Q in scenario.family_q
    )
    return ext_scale(1.0 / ((1.0 + lam) * alpha), best)


def alpha_grid(scenario: Scenario, fractions: Sequence[float] = ALPHA_GRID_FRACTIONS) -> List[float]:
    upper = 1.0 / (1.0 + scenario.realized_lambda)
    return [f * upper for f in fractions]


def exponent_curve(
    scenario: Scenario, alphas: Optional[Sequence[float]] = None
) -> List[Tuple[float, float]]:
    """(alpha, E(alpha)) over a grid, by default fractions of 1/(1+lambda)."""
    grid = alpha_grid(scenario) if alphas is None else list(alphas)
    return [(a, exponent_alpha(scenario, a)) for a in grid]


def false_alarm_bound(scenario: Scenario) -> float:
    """C(n1+|X|-1, |X|-1) n1^{-|X|} + C(n2+|X|-1, |X|-1) n2^{-|X|} for the modified rule."""
    k = scenario.alphabet_size
    bound = type_count(scenario.n1, k) / scenario.n1**k
    if scenario.n2 > 0:
        bound += type_count(scenario.n2, k) / scenario.n2**k
    return bound


def achievability_envelope(
    scenario: Scenario, rule: DecisionRule, pair: Tuple[int, int], limit: int = MAX_TYPE_PAIRS
) -> float:
    """Lower bound on -(1/n) log2 p_md for one (P1, P2) pair at the scenario's block lengths.

    min over excluded type pairs of (n1 D(t1||P1) + n2 D(t2||P2)) / n minus
    2|X| log2(n+1) / n; +inf when the rule excludes nothing.
    """
    counts1, counts2 = type_stacks(scenario)
    if counts1.shape[0] * counts2.shape[0] > limit:
        raise TooLarge(f"{counts1.shape[0] * counts2.shape[0]} type pairs exceed {limit}", "hyptest")
    excluded = ~inclusion_matrix(rule, scenario, counts1, counts2)
    if not np.any(excluded):
        return math.inf
    P1 = scenario.family_p1[pair[0]]
    P2 = scenario.family_p2[pair[1]]
    n1, n2, n = scenario.n1, scenario.n2, scenario.n
    d1 = n1 * pairwise_kl(counts1 / n1, P1.probs[None, :])[:, 0]
    d2 = n2 * pairwise_kl(counts2 / n2, P2.probs[None, :])[:, 0] if n2 > 0 else np.zeros(1)
    with np.errstate(invalid="ignore"):
        total = d1[:, None] + d2[None, :]
    best = float(np.min(np.where(excluded, total, math.inf)))
    return best / n - 2 * scenario.alphabet_size * math.log2(n + 1) / n


def exponent_trend(
    scenario: Scenario,
    rule: DecisionRule = DecisionRule(RuleKind.MODIFIED),
    n_list: Optional[Sequence[int]] = None,
) -> List[TrendPoint]:
    """-(1/n) log2 p_md for the worst pair at each Sensor 1 block length in n_list."""
    points: List[TrendPoint] = []
    for n1 in n_list or [scenario.n1]:
        sized = scenario.with_n1(n1)
        report = exact_errors(sized, rule)
        pair = report.worst_pair
        p_md = report.p_md[pair]
        exponent = math.inf if p_md <= 0 else -math.log2(p_md) / sized.n
        envelope = achievability_envelope(sized, rule, pair)
        points.append(TrendPoint(sized.n1, sized.n2, sized.n, pair, p_md, exponent, envelope))
    return points
