"""Method of types: enumeration, class sizes and the type probability facts."""

from .enumeration import (
    EXACT_SIZE_LIMIT,
    MAX_TYPES,
    EmpiricalType,
    count_matrix,
    enumerate_types,
    iter_count_vectors,
    iter_types,
    log2_type_class_size,
    type_class_size,
    type_count,
    type_size_bounds_hold,
)
from .lemma import (
    DeviationCheck,
    deviation_bound_check,
    exponent_matches_product,
    lemma_table,
    log2_sequence_probability,
    sequence_probability_exponent,
    type_class_probability,
)

__all__ = [
    "EXACT_SIZE_LIMIT",
    "MAX_TYPES",
    "EmpiricalType",
    "count_matrix",
    "enumerate_types",
    "iter_count_vectors",
    "iter_types",
    "log2_type_class_size",
    "type_class_size",
    "type_count",
    "type_size_bounds_hold",
    "DeviationCheck",
    "deviation_bound_check",
    "exponent_matches_product",
    "lemma_table",
    "log2_sequence_probability",
    "sequence_probability_exponent",
    "type_class_probability",
]
