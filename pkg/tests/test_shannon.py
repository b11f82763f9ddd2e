"""Tests for Shannon entropy, divergence, mutual information and capacity."""

import math

import pytest

from renyi_lab.core import (
    AlphabetMismatch,
    InvalidInput,
    NonConvergence,
    make_channel,
    make_distribution,
    uniform,
)
from renyi_lab.measures import (
    CapacityConfig,
    capacity,
    capacity_bounds,
    conditional_divergence,
    entropy,
    kl_divergence,
    mutual_information,
    mutual_information_variational,
    pairwise_kl,
    product_form_divergence,
)


def binary_entropy(p: float) -> float:
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


BSC = make_channel([[0.9, 0.1], [0.1, 0.9]])
Z_CHANNEL = make_channel([[1.0, 0.0], [0.5, 0.5]])


class TestEntropy:
    """Test Shannon entropy."""

    def test_uniform(self):
        assert entropy(uniform(4)) == pytest.approx(2.0)

    def test_dyadic(self):
        assert entropy(make_distribution([0.5, 0.25, 0.25])) == pytest.approx(1.5)

    def test_point_mass_is_zero(self):
        assert entropy(make_distribution([0, 1, 0])) == 0.0


class TestKLDivergence:
    """Test KL divergence and its support conventions."""

    def test_value(self):
        P = make_distribution([0.5, 0.5])
        Q = make_distribution([0.25, 0.75])
        expected = 0.5 * 1.0 + 0.5 * math.log2(0.5 / 0.75)
        assert kl_divergence(P, Q) == pytest.approx(expected)

    def test_identical_is_zero(self):
        P = make_distribution([0.2, 0.3, 0.5])
        assert kl_divergence(P, P) == 0.0

    def test_missing_support_is_infinite(self):
        assert kl_divergence(uniform(2), make_distribution([1, 0])) == math.inf

    def test_zero_weight_terms_vanish(self):
        """0 log(0/q) contributes nothing."""
        P = make_distribution([1, 0])
        assert kl_divergence(P, uniform(2)) == pytest.approx(1.0)

    def test_alphabet_mismatch(self):
        with pytest.raises(AlphabetMismatch):
            kl_divergence(uniform(2), uniform(3))

    def test_pairwise_table(self):
        table = pairwise_kl([[0.5, 0.5], [1.0, 0.0]], [[0.5, 0.5]])
        assert table.shape == (2, 1)
        assert table[0, 0] == pytest.approx(0.0)
        assert table[1, 0] == pytest.approx(1.0)

    def test_conditional_divergence(self):
        V = make_channel([[0.5, 0.5], [0.5, 0.5]])
        W = make_channel([[0.5, 0.5], [1.0, 0.0]])
        # Only the second row differs and its divergence is infinite
        assert conditional_divergence(V, W, make_distribution([1, 0])) == pytest.approx(0.0)
        assert conditional_divergence(V, W, uniform(2)) == math.inf


class TestMutualInformation:
    """Test mutual information and its variational forms."""

    def test_bsc_uniform_input(self):
        assert mutual_information(uniform(2), BSC) == pytest.approx(1 - binary_entropy(0.1))

    def test_noiseless_channel(self):
        identity = make_channel([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        P = make_distribution([0.5, 0.25, 0.25])
        assert mutual_information(P, identity) == pytest.approx(1.5)

    def test_useless_channel(self):
        W = make_channel([[0.3, 0.7], [0.3, 0.7]])
        assert mutual_information(make_distribution([0.2, 0.8]), W) == pytest.approx(0.0, abs=1e-12)

    def test_variational_form_attains_output_marginal(self, solver):
        P = make_distribution([0.3, 0.7])
        result = mutual_information_variational(P, BSC, solver)
        assert result.value == pytest.approx(mutual_information(P, BSC), abs=1e-8)
        assert result.point.probs.tolist() == pytest.approx([0.34, 0.66], abs=1e-4)

    def test_product_form_matches(self):
        P = make_distribution([0.3, 0.7])
        Q = make_distribution([0.6, 0.4])
        average = sum(P[x] * kl_divergence(BSC.row(x), Q) for x in range(2))
        assert product_form_divergence(P, BSC, Q) == pytest.approx(average)


class TestCapacity:
    """Test the certified capacity iteration."""

    def test_bsc(self):
        result = capacity(BSC, tol=1e-10)
        assert result.value == pytest.approx(1 - binary_entropy(0.1), abs=1e-9)
        assert result.argmax.probs.tolist() == pytest.approx([0.5, 0.5])

    def test_z_channel(self):
        result = capacity(Z_CHANNEL, tol=1e-10)
        assert result.value == pytest.approx(math.log2(1.25), abs=1e-9)
        assert result.upper_bound - result.value <= 1e-10

    def test_bounds_bracket_capacity(self):
        lower, upper = capacity_bounds(Z_CHANNEL, uniform(2).probs)
        assert lower <= math.log2(1.25) <= upper

    def test_non_convergence(self):
        with pytest.raises(NonConvergence):
            capacity(Z_CHANNEL, tol=1e-12, config=CapacityConfig(max_iter=1))

    def test_bad_tolerance(self):
        with pytest.raises(InvalidInput):
            capacity(BSC, tol=0.0)
