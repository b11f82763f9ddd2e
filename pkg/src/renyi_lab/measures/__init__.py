"""Shannon and Renyi information measures."""

from .renyi import (
    AlphaCapacity,
    AlphaVector,
    c_alpha,
    family_divergence,
    generalized_divergence_variational,
    generalized_renyi_divergence,
    geometric_center,
    i_alpha,
    i_alpha_objective,
    k_alpha,
    k_alpha_closed_form,
    k_alpha_objective,
    renyi_divergence,
    renyi_entropy,
    tilt,
)
from .shannon import (
    DEFAULT_CAPACITY_CONFIG,
    LN2,
    CapacityConfig,
    CapacityOptimum,
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

__all__ = [
    "AlphaCapacity",
    "AlphaVector",
    "c_alpha",
    "family_divergence",
    "generalized_divergence_variational",
    "generalized_renyi_divergence",
    "geometric_center",
    "i_alpha",
    "i_alpha_objective",
    "k_alpha",
    "k_alpha_closed_form",
    "k_alpha_objective",
    "renyi_divergence",
    "renyi_entropy",
    "tilt",
    "DEFAULT_CAPACITY_CONFIG",
    "LN2",
    "CapacityConfig",
    "CapacityOptimum",
    "capacity",
    "capacity_bounds",
    "conditional_divergence",
    "entropy",
    "kl_divergence",
    "mutual_information",
    "mutual_information_variational",
    "pairwise_kl",
    "product_form_divergence",
]
