"""Seeded property suite for the information measures and the testing results."""

from .instances import (
    UNIFORM_MIX,
    channel_mixture,
    mixture,
    property_rng,
    random_channel,
    random_distribution,
    random_family,
    random_scenario,
    symmetric_binary_scenario,
)
from .suite import (
    REGISTRY,
    PropertyCheck,
    PropertyResult,
    Tally,
    VerifyConfig,
    run_check,
    run_suite,
    select,
)

__all__ = [
    "UNIFORM_MIX",
    "channel_mixture",
    "mixture",
    "property_rng",
    "random_channel",
    "random_distribution",
    "random_family",
    "random_scenario",
    "symmetric_binary_scenario",
    "REGISTRY",
    "PropertyCheck",
    "PropertyResult",
    "Tally",
    "VerifyConfig",
    "run_check",
    "run_suite",
    "select",
]
