"""Tests for Renyi entropy, divergence, the order-alpha informations and capacity."""

import math

import numpy as np
import pytest
from scipy.special import rel_entr

from renyi_lab.core import (
    InfiniteValue,
    InvalidInput,
    InvalidOrder,
    NegativeWeight,
    WeightMismatch,
    make_channel,
    make_distribution,
    uniform,
)
from renyi_lab.measures import (
    AlphaVector,
    c_alpha,
    entropy,
    family_divergence,
    generalized_divergence_variational,
    generalized_renyi_divergence,
    geometric_center,
    i_alpha,
    k_alpha,
    k_alpha_closed_form,
    kl_divergence,
    mutual_information,
    renyi_divergence,
    renyi_entropy,
    tilt,
)
from renyi_lab.optim import grid_maximum, grid_minimum

P3 = make_distribution([0.5, 0.25, 0.25])
BSC = make_channel([[0.9, 0.1], [0.1, 0.9]])
NOISY = make_channel([[0.7, 0.2, 0.1], [0.1, 0.6, 0.3]])


class TestRenyiEntropy:
    """Test H_alpha across finite and limit orders."""

    def test_order_two(self):
        assert renyi_entropy(P3, 2) == pytest.approx(-math.log2(0.375))

    def test_order_zero_counts_support(self):
        assert renyi_entropy(make_distribution([0.5, 0.0, 0.5]), 0) == pytest.approx(1.0)
        assert renyi_entropy(P3, "0") == pytest.approx(math.log2(3))

    def test_order_infinity(self):
        assert renyi_entropy(P3, "inf") == pytest.approx(1.0)

    def test_order_one_is_shannon(self):
        assert renyi_entropy(P3, 1) == pytest.approx(entropy(P3))

    def test_continuity_at_one(self):
        assert renyi_entropy(P3, 1 + 1e-6) == pytest.approx(entropy(P3), abs=1e-5)
        assert renyi_entropy(P3, 1 - 1e-6) == pytest.approx(entropy(P3), abs=1e-5)

    def test_uniform_is_constant_in_order(self):
        for a in (0, 0.5, 1, 3, "inf"):
            assert renyi_entropy(uniform(8), a) == pytest.approx(3.0)

    def test_non_increasing(self, make_dist):
        P = make_dist(5)
        values = [renyi_entropy(P, a) for a in (0, 0.3, 0.9, 1, 1.5, 4, "inf")]
        assert all(later <= earlier + 1e-12 for earlier, later in zip(values, values[1:]))

    def test_large_order_is_stable(self):
        P = make_distribution([1e-200, 1.0])
        assert math.isfinite(renyi_entropy(P, 1e4))

    def test_negative_order_rejected(self):
        with pytest.raises(InvalidOrder):
            renyi_entropy(P3, -0.5)


class TestRenyiDivergence:
    """Test D_alpha and its support conditions."""

    P = make_distribution([0.5, 0.5])
    Q = make_distribution([0.25, 0.75])

    def test_order_two(self):
        assert renyi_divergence(self.P, self.Q, 2) == pytest.approx(math.log2(4 / 3))

    def test_order_infinity(self):
        assert renyi_divergence(self.P, self.Q, "inf") == pytest.approx(1.0)

    def test_order_zero(self):
        assert renyi_divergence(make_distribution([1, 0]), self.Q, 0) == pytest.approx(2.0)
        assert renyi_divergence(self.P, self.Q, 0) == pytest.approx(0.0)

    def test_order_one_is_kl(self):
        assert renyi_divergence(self.P, self.Q, 1) == pytest.approx(kl_divergence(self.P, self.Q))

    def test_support_failure_above_one(self):
        point = make_distribution([1, 0])
        assert renyi_divergence(self.P, point, 2) == math.inf
        assert renyi_divergence(self.P, point, "inf") == math.inf

    def test_support_failure_below_one_is_finite(self):
        point = make_distribution([1, 0])
        assert renyi_divergence(self.P, point, 0.5) == pytest.approx(1.0)

    def test_disjoint_supports(self):
        first, second = make_distribution([1, 0]), make_distribution([0, 1])
        assert renyi_divergence(first, second, 0.5) == math.inf
        assert renyi_divergence(first, second, 0) == math.inf

    def test_identical_is_zero(self):
        for a in (0, 0.5, 1, 2, "inf"):
            assert renyi_divergence(self.Q, self.Q, a) == 0.0

    def test_non_decreasing(self, make_dist):
        P, Q = make_dist(4, mix=0.1), make_dist(4, mix=0.1)
        values = [renyi_divergence(P, Q, a) for a in (0, 0.2, 0.7, 1, 1.3, 3, "inf")]
        assert all(later >= earlier - 1e-12 for earlier, later in zip(values, values[1:]))


class TestAlphaInformation:
    """Test I_alpha, K_alpha and the closed form of K_alpha."""

    def test_noiseless_uniform(self, solver):
        identity = make_channel([[1, 0], [0, 1]])
        assert i_alpha(uniform(2), identity, 2, config=solver).value == pytest.approx(1.0, abs=1e-7)
        assert k_alpha_closed_form(uniform(2), identity, 2).value == pytest.approx(1.0)

    def test_noiseless_k_is_entropy_of_reciprocal_order(self):
        identity = make_channel([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        for alpha in (0.5, 2.0, 3.0):
            value = k_alpha_closed_form(P3, identity, alpha).value
            assert value == pytest.approx(renyi_entropy(P3, 1 / alpha))

    def test_order_one_is_mutual_information(self):
        P = make_distribution([0.3, 0.7])
        expected = mutual_information(P, NOISY)
        assert i_alpha(P, NOISY, 1).value == pytest.approx(expected)
        assert k_alpha(P, NOISY, 1).value == pytest.approx(expected)

    @pytest.mark.parametrize("alpha", [0.5, 2.0])
    def test_k_alpha_matches_closed_form(self, solver, alpha):
        P = make_distribution([0.3, 0.7])
        numeric = k_alpha(P, NOISY, alpha, config=solver)
        closed = k_alpha_closed_form(P, NOISY, alpha)
        assert numeric.value == pytest.approx(closed.value, abs=1e-7)
        assert numeric.point.probs.tolist() == pytest.approx(closed.point.probs.tolist(), abs=1e-3)

    @pytest.mark.parametrize("alpha", [0.5, 2.0])
    def test_i_alpha_is_a_minimum(self, solver, alpha):
        """No other output distribution beats the returned minimizer."""
        P = make_distribution([0.3, 0.7])
        best = i_alpha(P, NOISY, alpha, config=solver)
        for q in ([1 / 3, 1 / 3, 1 / 3], [0.4, 0.4, 0.2], best.point.probs * 0.9 + 0.1 / 3):
            Q = make_distribution(q)
            value = sum(P[x] * renyi_divergence(NOISY.row(x), Q, alpha) for x in range(2))
            assert best.value <= value + 1e-9

    def test_k_alpha_not_convex_in_channel(self):
        """Above order one K_a can exceed the chord in W; its norm sum cannot."""
        alpha, w = 5.0, 0.9
        identity = make_channel([[1, 0], [0, 1]])
        useless = make_channel([[0.5, 0.5], [0.5, 0.5]])
        mixed = make_channel(w * identity.rows + (1 - w) * useless.rows)

        def k_value(channel):
            return k_alpha_closed_form(uniform(2), channel, alpha).value

        def norm_sum(channel):
            return 2.0 ** ((alpha - 1) / alpha * k_value(channel))

        assert k_value(identity) == pytest.approx(1.0)
        assert k_value(useless) == pytest.approx(0.0, abs=1e-12)
        assert k_value(mixed) > w * k_value(identity) + (1 - w) * k_value(useless) + 1e-3
        assert norm_sum(mixed) <= w * norm_sum(identity) + (1 - w) * norm_sum(useless)

    def test_limit_orders_rejected(self):
        with pytest.raises(InvalidOrder):
            i_alpha(uniform(2), BSC, "inf")
        with pytest.raises(InvalidOrder):
            k_alpha_closed_form(uniform(2), BSC, 0)

    def test_bad_tolerance(self):
        with pytest.raises(InvalidInput):
            i_alpha(uniform(2), BSC, 2, tol=-1.0)


class TestAlphaCapacity:
    """Test C_alpha."""

    def test_symmetric_channel(self, solver):
        result = c_alpha(BSC, 2, config=solver)
        expected = k_alpha_closed_form(uniform(2), BSC, 2).value
        assert result.value == pytest.approx(expected, abs=1e-6)
        assert result.k_value == pytest.approx(expected, abs=1e-6)
        assert result.argmax.probs.tolist() == pytest.approx([0.5, 0.5], abs=1e-3)

    def test_order_one_is_shannon_capacity(self):
        result = c_alpha(BSC, 1)
        expected = 1 + 0.1 * math.log2(0.1) + 0.9 * math.log2(0.9)
        assert result.value == pytest.approx(expected, abs=1e-9)


class TestGridOracles:
    """Compare the solvers with brute-force minima over simplex grids."""

    W2 = make_channel([[0.8, 0.2], [0.3, 0.7]])
    P2 = make_distribution([0.4, 0.6])

    def row_sums(self, q, alpha):
        """sum_y W(y|x)^a q(y)^{1-a} for every grid point q and input x."""
        with np.errstate(divide="ignore"):
            return np.einsum("xy,ny->nx", self.W2.rows**alpha, q ** (1.0 - alpha))

    @pytest.mark.parametrize("alpha", [0.5, 2.0, 4.0])
    def test_i_alpha(self, solver, alpha):
        def oracle(q):
            return np.log2(self.row_sums(q, alpha)) @ self.P2.probs / (alpha - 1.0)

        grid = grid_minimum(oracle, 2, 1e-4, vectorized=True)
        result = i_alpha(self.P2, self.W2, alpha, config=solver)
        assert result.value == pytest.approx(grid.value, abs=1e-6)
        assert result.value <= grid.value + 1e-7

    @pytest.mark.parametrize("alpha", [0.5, 2.0, 4.0])
    def test_k_alpha(self, solver, alpha):
        def oracle(q):
            return np.log2(self.row_sums(q, alpha) @ self.P2.probs) / (alpha - 1.0)

        grid = grid_minimum(oracle, 2, 1e-4, vectorized=True)
        result = k_alpha(self.P2, self.W2, alpha, config=solver)
        assert result.value == pytest.approx(grid.value, abs=1e-6)
        assert result.value <= grid.value + 1e-7

    @pytest.mark.parametrize("alpha", [0.5, 2.0])
    def test_c_alpha(self, solver, make_channel_factory, alpha):
        W = make_channel_factory(2, 2, mix=0.1)
        grid = grid_maximum(lambda p: k_alpha_closed_form(make_distribution(p), W, alpha).value, 2, 1e-3)
        result = c_alpha(W, alpha, config=solver)
        assert result.value == pytest.approx(grid.value, abs=1e-5)
        assert result.k_value == pytest.approx(grid.value, abs=1e-5)
        assert result.k_value >= grid.value - 1e-7

    def test_generalized_divergence(self, solver):
        family = [
            make_distribution([0.5, 0.3, 0.2]),
            make_distribution([0.2, 0.2, 0.6]),
            make_distribution([0.1, 0.7, 0.2]),
        ]
        weights = np.array([0.2, 0.3, 0.5])
        stacked = np.stack([P.probs for P in family])

        def oracle(q):
            terms = rel_entr(q[:, None, :], stacked[None, :, :]).sum(axis=2)
            return terms @ weights / math.log(2)

        grid = grid_minimum(oracle, 3, 1e-3, vectorized=True)
        result = generalized_divergence_variational(family, AlphaVector(weights), config=solver)
        assert result.value == pytest.approx(grid.value, abs=2e-5)
        assert result.value <= grid.value + 1e-7


class TestGeneralizedDivergence:
    """Test the multi-distribution divergence and its variational form."""

    P = make_distribution([0.5, 0.5])
    Q = make_distribution([0.25, 0.75])

    def test_two_point_case(self):
        """With weights (1/2, 1/2) it is half the order-1/2 divergence."""
        value = generalized_renyi_divergence([self.P, self.Q], AlphaVector(np.array([0.5, 0.5])))
        assert value == pytest.approx(0.5 * renyi_divergence(self.P, self.Q, 0.5))

    def test_zero_weight_drops_out(self):
        point = make_distribution([0, 1])
        weights = AlphaVector(np.array([0.0, 1.0]))
        assert generalized_renyi_divergence([point, self.Q], weights) == pytest.approx(0.0)

    def test_disjoint_is_infinite(self):
        weights = AlphaVector(np.array([0.5, 0.5]))
        pair = [make_distribution([1, 0]), make_distribution([0, 1])]
        assert generalized_renyi_divergence(pair, weights) == math.inf
        with pytest.raises(InfiniteValue):
            generalized_divergence_variational(pair, weights)

    def test_variational_form(self, solver):
        family = [self.P, self.Q, make_distribution([0.6, 0.4])]
        weights = AlphaVector(np.array([0.2, 0.3, 0.5]))
        result = generalized_divergence_variational(family, weights, config=solver)
        assert result.value == pytest.approx(generalized_renyi_divergence(family, weights), abs=1e-8)
        center = geometric_center(family, weights)
        assert result.point.probs.tolist() == pytest.approx(center.probs.tolist(), abs=1e-4)

    def test_weight_validation(self):
        with pytest.raises(WeightMismatch):
            AlphaVector(np.array([1.0]))
        with pytest.raises(WeightMismatch):
            AlphaVector(np.array([0.5, 0.6]))
        with pytest.raises(NegativeWeight):
            AlphaVector(np.array([1.5, -0.5]))
        with pytest.raises(WeightMismatch):
            generalized_renyi_divergence([self.P, self.Q, self.P], AlphaVector(np.array([0.5, 0.5])))


class TestFamilies:
    """Test family divergence and tilting helpers."""

    def test_family_divergence_is_minimum(self):
        F1 = [make_distribution([0.9, 0.1]), make_distribution([0.6, 0.4])]
        F2 = [make_distribution([0.5, 0.5])]
        expected = min(renyi_divergence(p, F2[0], 2) for p in F1)
        assert family_divergence(F1, F2, 2) == pytest.approx(expected)

    def test_empty_family(self):
        with pytest.raises(InvalidInput):
            family_divergence([], [uniform(2)], 2)

    def test_tilt_of_disjoint_pair(self):
        assert tilt(make_distribution([1, 0]), make_distribution([0, 1]), 0.5) is None

    def test_tilt_values(self):
        logs = tilt(make_distribution([0.5, 0.5]), make_distribution([0.25, 0.75]), 0.5)
        assert np.exp(logs).tolist() == pytest.approx([math.sqrt(0.125), math.sqrt(0.375)])
