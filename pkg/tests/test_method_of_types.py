"""Tests for type enumeration, class sizes and the type probability facts."""

import math

import pytest

from renyi_lab.core import AlphabetMismatch, InvalidInput, TooLarge, ZeroMass, make_distribution, uniform
from renyi_lab.measures import entropy, kl_divergence
from renyi_lab.method_of_types import (
    EmpiricalType,
    count_matrix,
    deviation_bound_check,
    enumerate_types,
    exponent_matches_product,
    iter_types,
    lemma_table,
    log2_sequence_probability,
    log2_type_class_size,
    sequence_probability_exponent,
    type_class_probability,
    type_class_size,
    type_count,
    type_size_bounds_hold,
)

P = make_distribution([0.5, 0.3, 0.2])


class TestEmpiricalType:
    """Test the type value object."""

    def test_of(self):
        t = EmpiricalType.of([2, 0, 1])
        assert t.n == 3
        assert t.frequencies().tolist() == pytest.approx([2 / 3, 0.0, 1 / 3])

    def test_counts_must_sum_to_n(self):
        with pytest.raises(InvalidInput):
            EmpiricalType((1, 1), 3)

    def test_negative_counts(self):
        with pytest.raises(InvalidInput):
            EmpiricalType((2, -1), 1)

    def test_empty_type_has_no_frequencies(self):
        with pytest.raises(ZeroMass):
            EmpiricalType.of([0, 0]).frequencies()


class TestEnumeration:
    """Test type enumeration and counting."""

    def test_colexicographic_order(self):
        counts = [t.counts for t in enumerate_types(2, 2)]
        assert counts == [(2, 0), (1, 1), (0, 2)]

    @pytest.mark.parametrize("n, k", [(1, 1), (5, 2), (7, 3), (4, 5)])
    def test_count_formula(self, n, k):
        types = enumerate_types(n, k)
        assert len(types) == type_count(n, k) == math.comb(n + k - 1, k - 1)
        assert len({t.counts for t in types}) == len(types)

    def test_count_matrix_matches_stream(self):
        matrix = count_matrix(4, 3)
        assert [tuple(row) for row in matrix.tolist()] == [t.counts for t in iter_types(4, 3)]

    def test_limit(self):
        with pytest.raises(TooLarge):
            enumerate_types(30, 6, limit=1000)
        with pytest.raises(TooLarge):
            count_matrix(30, 6, limit=1000)

    def test_bad_arguments(self):
        with pytest.raises(InvalidInput):
            enumerate_types(0, 2)


class TestClassSizes:
    """Test type-class sizes and their entropy bounds."""

    def test_multinomial(self):
        assert type_class_size(EmpiricalType.of([2, 1, 1])) == 12

    def test_class_sizes_partition_sequences(self):
        assert sum(type_class_size(t) for t in enumerate_types(6, 3)) == 3**6

    def test_log_size_switches_to_gamma(self):
        t = EmpiricalType.of([30, 20, 11])
        assert log2_type_class_size(t) == pytest.approx(math.log2(type_class_size(t)), rel=1e-12)

    def test_size_bounds(self):
        for t in enumerate_types(12, 3):
            assert type_size_bounds_hold(t)

    def test_upper_bound_is_tight_for_point_types(self):
        """A constant sequence has H(Q) = 0 and a class of size one."""
        t = EmpiricalType.of([0, 9, 0])
        assert type_class_size(t) == 1
        assert type_size_bounds_hold(t)


class TestProbabilities:
    """Test sequence and type-class probabilities."""

    def test_sequence_probability(self):
        t = EmpiricalType.of([2, 1, 1])
        assert 2 ** log2_sequence_probability(P, t) == pytest.approx(0.25 * 0.3 * 0.2)

    def test_exponent_is_divergence_plus_entropy(self):
        t = EmpiricalType.of([1, 2, 1])
        Q = t.as_distribution()
        expected = kl_divergence(Q, P) + entropy(Q)
        assert sequence_probability_exponent(P, t) == pytest.approx(expected)
        assert exponent_matches_product(P, t)

    def test_exponent_uses_the_type_entropy(self):
        t = EmpiricalType.of([4, 0, 0])
        Q = t.as_distribution()
        exponent = sequence_probability_exponent(P, t)
        assert exponent == pytest.approx(kl_divergence(Q, P) + entropy(Q))
        assert exponent == pytest.approx(1.0)
        assert exponent != pytest.approx(kl_divergence(Q, P) + entropy(P))
        assert exponent_matches_product(P, t)

    def test_outside_support(self):
        partial = make_distribution([0.5, 0.5, 0.0])
        t = EmpiricalType.of([1, 0, 1])
        assert sequence_probability_exponent(partial, t) == math.inf
        assert log2_sequence_probability(partial, t) == -math.inf
        assert exponent_matches_product(partial, t)
        assert type_class_probability(partial, t) == 0.0

    def test_class_probabilities_sum_to_one(self):
        total = sum(type_class_probability(P, t) for t in enumerate_types(8, 3))
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_alphabet_mismatch(self):
        with pytest.raises(AlphabetMismatch):
            log2_sequence_probability(P, EmpiricalType.of([1, 1]))

    @pytest.mark.parametrize("n, delta", [(5, 0.05), (10, 0.1), (20, 0.3)])
    def test_deviation_bound(self, n, delta):
        check = deviation_bound_check(P, n, delta)
        assert 0.0 <= check.exact_tail <= check.bound


class TestLemmaTable:
    """Test the per-type report."""

    def test_summary(self):
        doc = lemma_table(uniform(2), 4, 0.1)
        summary = doc["summary"]
        assert len(doc["types"]) == 5
        assert summary["count_matches"]
        assert summary["class_sizes_sum_to_power"]
        assert summary["all_size_bounds_hold"]
        assert summary["all_exponents_match"]
        assert summary["deviation_bound_holds"]
        assert summary["total_probability"] == pytest.approx(1.0)

    def test_rows(self):
        rows = lemma_table(uniform(2), 2, 0.1)["types"]
        assert [row["counts"] for row in rows] == [[2, 0], [1, 1], [0, 2]]
        assert [row["class_size"] for row in rows] == [1, 2, 1]
        assert rows[1]["probability"] == pytest.approx(0.5)
        assert rows[0]["exponent"] == pytest.approx(1.0)
