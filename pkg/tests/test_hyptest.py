"""Tests for two-sensor composite hypothesis testing."""

import math

import numpy as np
import pytest

from renyi_lab.core import (
    AlphaOutOfRange,
    DenominatorMismatch,
    InvalidInput,
    TooLarge,
    make_distribution,
)
from renyi_lab.hyptest import (
    DecisionRule,
    RuleKind,
    Scenario,
    achievability_envelope,
    achievable_exponent,
    alpha_grid,
    delta_n,
    equality_condition,
    equality_report,
    exact_errors,
    exponent_alpha,
    exponent_curve,
    exponent_trend,
    false_alarm_bound,
    load_scenario,
    monte_carlo_errors,
    renyi_lower_bound,
    rule_contains,
    rule_overlap,
    worst_noise_family,
)
from renyi_lab.method_of_types import EmpiricalType
from renyi_lab.verify import random_scenario, symmetric_binary_scenario

# D((1/2, 1/2) || (0.9, 0.1)) = log2(5/3), and so is -log2 of the Bhattacharyya sum 0.6
SYMMETRIC_EXPONENT = math.log2(5 / 3)


def scenario_of(p1, p2, q, lam=1.0, n1=4) -> Scenario:
    return Scenario(
        tuple(make_distribution(p) for p in p1),
        tuple(make_distribution(p) for p in p2),
        tuple(make_distribution(p) for p in q),
        lam,
        n1,
    )


class TestScenario:
    """Test scenario construction and block lengths."""

    def test_block_lengths(self):
        scenario = scenario_of([[0.5, 0.5]], [[0.5, 0.5]], [[0.5, 0.5]], lam=0.5, n1=5)
        # 2.5 rounds half up
        assert scenario.n2 == 3
        assert scenario.n == 8
        assert scenario.realized_lambda == pytest.approx(0.6)

    def test_zero_lambda(self):
        scenario = scenario_of([[0.5, 0.5]], [[0.5, 0.5]], [[0.5, 0.5]], lam=0.0)
        assert scenario.n2 == 0

    def test_empty_family(self):
        with pytest.raises(InvalidInput):
            Scenario((), (make_distribution([1, 1]),), (make_distribution([1, 1]),), 1.0, 4)

    @pytest.mark.parametrize("lam, n1", [(-1.0, 4), (math.inf, 4), (1.0, 0)])
    def test_invalid_parameters(self, lam, n1):
        with pytest.raises(InvalidInput):
            scenario_of([[0.5, 0.5]], [[0.5, 0.5]], [[0.5, 0.5]], lam=lam, n1=n1)

    def test_load(self, write_json):
        path = write_json(
            "scenario.json",
            {
                "p1": [{"probs": [0.9, 0.1]}],
                "p2": [{"probs": [0.1, 0.9]}],
                "q": [{"probs": [0.5, 0.5]}],
                "lambda": 2.0,
                "n1": 3,
            },
        )
        scenario = load_scenario(path)
        assert scenario.n2 == 6
        assert scenario.alphabet_size == 2

    def test_load_rejects_missing_field(self, write_json):
        path = write_json("scenario.json", {"p1": [{"probs": [1.0]}], "p2": [], "q": [], "n1": 3})
        with pytest.raises(InvalidInput):
            load_scenario(path)


class TestRules:
    """Test thresholds and acceptance regions."""

    def test_delta_n(self):
        assert delta_n(1, 3) == 0.0
        assert delta_n(8, 2) == pytest.approx(0.75)
        with pytest.raises(InvalidInput):
            delta_n(0, 2)

    def test_thresholds(self):
        rule = DecisionRule(RuleKind.MODIFIED, threshold_scale=2.0)
        thresholds = rule.thresholds(symmetric_binary_scenario())
        assert thresholds.sensor1 == pytest.approx(1.5)
        assert thresholds.joint == pytest.approx(1.5)

    def test_contains(self):
        scenario = symmetric_binary_scenario(n1=8)
        rule = DecisionRule.of("modified")
        # Both samples look like the noise, so no phenomena
        assert not rule_contains(rule, scenario, EmpiricalType.of([4, 4]), EmpiricalType.of([4, 4]))
        # Both types sit at the far corners, far from (1/2, 1/2)
        assert rule_contains(rule, scenario, EmpiricalType.of([8, 0]), EmpiricalType.of([0, 8]))

    def test_denominator_mismatch(self):
        scenario = symmetric_binary_scenario(n1=4)
        with pytest.raises(DenominatorMismatch):
            rule_contains(DecisionRule(), scenario, EmpiricalType.of([3, 0]), EmpiricalType.of([2, 2]))

    def test_disjoint_support_rule(self):
        scenario = symmetric_binary_scenario(n1=4)
        rule = DecisionRule(RuleKind.DISJOINT_SUPPORT)
        assert rule_contains(rule, scenario, EmpiricalType.of([4, 0]), EmpiricalType.of([0, 4]))
        assert not rule_contains(rule, scenario, EmpiricalType.of([3, 1]), EmpiricalType.of([0, 4]))

    def test_modified_region_inside_union(self):
        """With equal block lengths the modified region is contained in the union region."""
        scenario = symmetric_binary_scenario(n1=8)
        overlap = rule_overlap(DecisionRule(RuleKind.UNION), DecisionRule(RuleKind.MODIFIED), scenario)
        assert overlap["second_only"] == 0
        assert sum(overlap.values()) == 81


class TestErrorProbabilities:
    """Test exact and Monte Carlo error probabilities."""

    def test_accept_everything(self):
        report = exact_errors(symmetric_binary_scenario(), DecisionRule(threshold_override=0.0))
        assert report.worst_p_md == pytest.approx(0.0, abs=1e-15)
        assert report.worst_p_fa == pytest.approx(1.0)

    def test_accept_nothing(self):
        report = exact_errors(symmetric_binary_scenario(), DecisionRule(threshold_override=1e9))
        assert report.worst_p_md == pytest.approx(1.0)
        assert report.worst_p_fa == 0.0

    def test_disjoint_supports_never_miss(self):
        scenario = scenario_of([[1, 0]], [[0, 1]], [[0.5, 0.5]], lam=1.0, n1=8)
        report = exact_errors(scenario, DecisionRule(RuleKind.DISJOINT_SUPPORT))
        assert report.p_md[(0, 0)] == 0.0
        assert report.p_fa[0] == pytest.approx(2.0**-15)

    def test_false_alarm_bound(self):
        scenario = symmetric_binary_scenario()
        assert false_alarm_bound(scenario) == pytest.approx(2 * 9 / 64)
        report = exact_errors(scenario, DecisionRule(RuleKind.MODIFIED))
        assert report.worst_p_fa <= false_alarm_bound(scenario)

    def test_single_sensor_with_no_second_samples(self):
        scenario = scenario_of([[0.9, 0.1]], [[0.1, 0.9]], [[0.5, 0.5]], lam=0.0, n1=6)
        single = exact_errors(scenario, DecisionRule(RuleKind.SINGLE_SENSOR))
        modified = exact_errors(scenario, DecisionRule(RuleKind.MODIFIED))
        assert single.p_md == pytest.approx(modified.p_md)
        assert single.n2 == 0

    def test_too_many_pairs(self):
        with pytest.raises(TooLarge):
            exact_errors(symmetric_binary_scenario(), DecisionRule(), limit=10)

    def test_report_dict(self):
        doc = exact_errors(symmetric_binary_scenario(n1=4), DecisionRule()).to_dict()
        assert doc["method"] == "exact"
        assert doc["p_md"][0]["p1"] == 0
        assert "stderr" not in doc["p_fa"][0]

    def test_monte_carlo_agrees(self):
        scenario = symmetric_binary_scenario()
        rule = DecisionRule(RuleKind.MODIFIED)
        exact = exact_errors(scenario, rule)
        estimate = monte_carlo_errors(scenario, rule, trials=20000, seed=7)
        for key, value in exact.p_md.items():
            sigma = math.sqrt(value * (1 - value) / 20000)
            assert abs(estimate.p_md[key] - value) <= 4 * sigma + 1 / 20000
        for key, value in exact.p_fa.items():
            sigma = math.sqrt(value * (1 - value) / 20000)
            assert abs(estimate.p_fa[key] - value) <= 4 * sigma + 1 / 20000
        assert estimate.to_dict()["trials"] == 20000

    def test_monte_carlo_is_reproducible(self):
        scenario = symmetric_binary_scenario(n1=4)
        first = monte_carlo_errors(scenario, DecisionRule(), trials=5000, seed=11)
        second = monte_carlo_errors(scenario, DecisionRule(), trials=5000, seed=11)
        assert first.p_md == second.p_md
        assert first.p_fa == second.p_fa

    def test_monte_carlo_validation(self):
        with pytest.raises(InvalidInput):
            monte_carlo_errors(symmetric_binary_scenario(), DecisionRule(), trials=0, seed=1)
        with pytest.raises(InvalidInput):
            monte_carlo_errors(symmetric_binary_scenario(), DecisionRule(), trials=10, seed=-1)


class TestExponents:
    """Test the achievable exponent, the Renyi lower bound and E(alpha)."""

    def test_symmetric_values(self):
        scenario = symmetric_binary_scenario()
        assert achievable_exponent(scenario) == pytest.approx(SYMMETRIC_EXPONENT)
        assert renyi_lower_bound(scenario) == pytest.approx(SYMMETRIC_EXPONENT)

    def test_worst_noise_is_uniform(self):
        family = worst_noise_family(symmetric_binary_scenario())
        assert len(family) == 1
        assert family[0].probs.tolist() == pytest.approx([0.5, 0.5])

    def test_equality_condition(self):
        assert equality_condition(symmetric_binary_scenario())
        report = equality_report(symmetric_binary_scenario())
        assert report.in_closure and report.exponents_equal and report.consistent

    def test_strict_gap_away_from_worst_noise(self):
        scenario = scenario_of([[0.9, 0.1]], [[0.1, 0.9]], [[0.7, 0.3]], n1=8)
        report = equality_report(scenario)
        assert report.distance == pytest.approx(0.2)
        assert report.gap > 0
        assert not report.in_closure and not report.exponents_equal

    def test_lower_bound_never_exceeds_achievable(self, rng):
        for _ in range(25):
            scenario = random_scenario(rng)
            assert renyi_lower_bound(scenario) <= achievable_exponent(scenario) + 1e-10

    def test_lower_bound_needs_second_sensor(self):
        scenario = scenario_of([[0.9, 0.1]], [[0.1, 0.9]], [[0.5, 0.5]], lam=0.0)
        with pytest.raises(InvalidInput):
            renyi_lower_bound(scenario)

    def test_disjoint_worst_noise_family(self):
        scenario = scenario_of([[1, 0]], [[0, 1]], [[0.5, 0.5]])
        assert worst_noise_family(scenario) == []
        assert equality_report(scenario).distance == math.inf

    def test_exponent_alpha_endpoint(self):
        scenario = symmetric_binary_scenario()
        assert exponent_alpha(scenario, 0.5) == pytest.approx(renyi_lower_bound(scenario))

    def test_exponent_alpha_range(self):
        with pytest.raises(AlphaOutOfRange):
            exponent_alpha(symmetric_binary_scenario(), 0.6)
        with pytest.raises(AlphaOutOfRange):
            exponent_alpha(symmetric_binary_scenario(), 0.0)

    def test_curve_is_non_increasing(self):
        scenario = scenario_of([[0.8, 0.2]], [[0.3, 0.7]], [[0.6, 0.4]], lam=2.0)
        values = [value for _, value in exponent_curve(scenario)]
        assert all(later <= earlier + 1e-12 for earlier, later in zip(values, values[1:]))
        assert alpha_grid(scenario)[-1] == pytest.approx(1 / 3)

    def test_small_order_limit(self):
        """As alpha goes to 0 the exponent tends to the achievable value."""
        scenario = scenario_of([[0.8, 0.2]], [[0.3, 0.7]], [[0.6, 0.4]], lam=2.0)
        assert exponent_alpha(scenario, 1e-6) == pytest.approx(achievable_exponent(scenario), abs=1e-4)


class TestFiniteLength:
    """Test the finite-n envelope and the exponent trend."""

    def test_envelope_below_observed_exponent(self):
        points = exponent_trend(symmetric_binary_scenario(), n_list=[2, 4, 8])
        assert [p.n1 for p in points] == [2, 4, 8]
        for point in points:
            assert point.envelope <= point.exponent + 1e-12
            assert 0.0 < point.p_md <= 1.0

    def test_envelope_when_nothing_is_excluded(self):
        scenario = symmetric_binary_scenario(n1=4)
        assert achievability_envelope(scenario, DecisionRule(threshold_override=0.0), (0, 0)) == math.inf

    def test_trend_dict(self):
        doc = exponent_trend(symmetric_binary_scenario(n1=4))[0].to_dict()
        assert set(doc) == {"n1", "n2", "n", "p1", "p2", "p_md", "exponent", "envelope"}
        assert doc["n"] == 8

    def test_error_probabilities_shrink(self):
        rule = DecisionRule(RuleKind.MODIFIED)
        small = exact_errors(symmetric_binary_scenario(n1=8), rule).worst_p_md
        large = exact_errors(symmetric_binary_scenario(n1=32), rule).worst_p_md
        assert large < small
        assert np.isfinite(large)
