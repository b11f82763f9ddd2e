"""Tests for exponentially weighted codelengths."""

import math

import pytest

from renyi_lab.codelength import (
    CodelengthAssignment,
    brute_force_min_codelength,
    campbell_code,
    ideal_codelength,
    kraft_sum,
    weighted_codelength,
)
from renyi_lab.core import (
    InvalidInput,
    KraftViolation,
    KraftWarning,
    ShapeMismatch,
    TooLarge,
    make_distribution,
    uniform,
)
from renyi_lab.measures import renyi_entropy
from renyi_lab.variational import optimal_q_entropy

DYADIC = make_distribution([0.5, 0.25, 0.25])


class TestAssignment:
    """Test length assignments and Kraft's inequality."""

    def test_kraft_sum(self):
        assert kraft_sum([1, 2, 2]) == 1.0
        assert CodelengthAssignment((1, 2, 3)).kraft_sum == pytest.approx(0.875)

    def test_violation(self):
        with pytest.raises(KraftViolation):
            CodelengthAssignment((1, 1, 1))

    def test_positive_lengths(self):
        with pytest.raises(InvalidInput):
            CodelengthAssignment((0, 1))


class TestWeightedCodelength:
    """Test the exponentially weighted codelength."""

    def test_equal_lengths(self):
        assert weighted_codelength(uniform(4), [2, 2, 2, 2], 3.0) == pytest.approx(2.0)

    def test_small_lambda_approaches_average_length(self):
        value = weighted_codelength(DYADIC, CodelengthAssignment((1, 2, 2)), 1e-6)
        assert value == pytest.approx(1.5, abs=1e-5)

    def test_large_lambda_approaches_maximum_length(self):
        value = weighted_codelength(DYADIC, [1, 2, 3], 200.0)
        assert value == pytest.approx(3.0, abs=0.02)

    def test_kraft_warning(self):
        with pytest.warns(KraftWarning):
            weighted_codelength(DYADIC, [1, 1, 1], 1.0)

    def test_length_count_mismatch(self):
        with pytest.raises(ShapeMismatch):
            weighted_codelength(DYADIC, [1, 2], 1.0)

    @pytest.mark.parametrize("lam", [0.0, -1.0, math.inf])
    def test_lambda_validation(self, lam):
        with pytest.raises(InvalidInput):
            weighted_codelength(DYADIC, [1, 2, 2], lam)

    def test_ideal_at_tilted_distribution(self):
        lam = 0.7
        Q = optimal_q_entropy(DYADIC, 1 / (1 + lam))
        assert ideal_codelength(DYADIC, Q, lam) == pytest.approx(renyi_entropy(DYADIC, 1 / (1 + lam)))

    def test_ideal_outside_support(self):
        assert ideal_codelength(DYADIC, make_distribution([1, 0, 0]), 1.0) == math.inf


class TestCampbellCode:
    """Test the code matched to the tilted distribution."""

    def test_uniform(self):
        code = campbell_code(uniform(4), 1.0)
        assert code.lengths == (2, 2, 2, 2)

    @pytest.mark.parametrize("lam", [0.25, 1.0, 4.0])
    def test_within_one_bit(self, make_dist, lam):
        for _ in range(20):
            P = make_dist(5, mix=0.01)
            code = campbell_code(P, lam)
            floor = renyi_entropy(P, 1 / (1 + lam))
            value = weighted_codelength(P, code, lam)
            assert floor - 1e-12 <= value < floor + 1
            assert code.kraft_sum <= 1.0

    def test_symbols_outside_support(self):
        code = campbell_code(make_distribution([1, 0]), 1.0)
        assert code.lengths == (1, 12)

    def test_kraft_repair(self):
        """Two symbols fill the budget, so one is extended to make room."""
        code = campbell_code(make_distribution([0.5, 0.5, 0.0]), 1.0)
        assert code.lengths == (2, 1, 12)
        assert code.kraft_sum <= 1.0


class TestBruteForce:
    """Test the exhaustive minimum."""

    def test_uniform(self):
        result = brute_force_min_codelength(uniform(4), 1.0)
        assert result.value == pytest.approx(2.0)
        assert result.best.lengths == (2, 2, 2, 2)

    def test_dyadic(self):
        result = brute_force_min_codelength(DYADIC, 1e-3)
        assert result.best.lengths == (1, 2, 2)

    @pytest.mark.parametrize("lam", [0.25, 1.0, 4.0])
    def test_not_worse_than_campbell(self, make_dist, lam):
        for _ in range(5):
            P = make_dist(4, mix=0.01)
            exact = brute_force_min_codelength(P, lam, max_len=8)
            assert exact.value <= weighted_codelength(P, campbell_code(P, lam, max_len=8), lam) + 1e-12
            assert exact.value >= renyi_entropy(P, 1 / (1 + lam)) - 1e-12

    def test_too_large(self):
        with pytest.raises(TooLarge):
            brute_force_min_codelength(uniform(7), 1.0)
        with pytest.raises(TooLarge):
            brute_force_min_codelength(uniform(3), 1.0, max_len=13)

    def test_lengths_too_short(self):
        with pytest.raises(InvalidInput):
            brute_force_min_codelength(uniform(5), 1.0, max_len=2)
