"""Two-sensor composite hypothesis testing."""

from .exponents import (
    ALPHA_GRID_FRACTIONS,
    EQUALITY_TOL,
    EqualityReport,
    TrendPoint,
    achievability_envelope,
    achievable_exponent,
    alpha_grid,
    equality_condition,
    equality_report,
    exponent_alpha,
    exponent_curve,
    exponent_trend,
    false_alarm_bound,
    renyi_lower_bound,
    worst_noise_family,
)
from .probabilities import MAX_TYPE_PAIRS, ErrorReport, exact_errors, monte_carlo_errors
from .rules import (
    DecisionRule,
    RuleKind,
    Thresholds,
    delta_n,
    inclusion_matrix,
    rule_contains,
    rule_overlap,
    type_stacks,
)
from .scenario import Scenario, ScenarioModel, load_scenario

__all__ = [
    "ALPHA_GRID_FRACTIONS",
    "EQUALITY_TOL",
    "EqualityReport",
    "TrendPoint",
    "achievability_envelope",
    "achievable_exponent",
    "alpha_grid",
    "equality_condition",
    "equality_report",
    "exponent_alpha",
    "exponent_curve",
    "exponent_trend",
    "false_alarm_bound",
    "renyi_lower_bound",
    "worst_noise_family",
    "MAX_TYPE_PAIRS",
    "ErrorReport",
    "exact_errors",
    "monte_carlo_errors",
    "DecisionRule",
    "RuleKind",
    "Thresholds",
    "delta_n",
    "inclusion_matrix",
    "rule_contains",
    "rule_overlap",
    "type_stacks",
    "Scenario",
    "ScenarioModel",
    "load_scenario",
]
