"""Variational characterizations of the Renyi measures in terms of Shannon measures."""

from .functionals import (
    RecursivityBounds,
    g_divergence,
    g_entropy,
    j_functional,
    j_optimizer,
    log_sum_check,
    merge_symbols,
    optimal_q_divergence,
    optimal_q_entropy,
    recursivity_bounds,
)
from .solvers import (
    VariationalReport,
    j_variational,
    variational_divergence,
    variational_entropy,
    variational_i_alpha,
    variational_k_alpha,
)

__all__ = [
    "RecursivityBounds",
    "g_divergence",
    "g_entropy",
    "j_functional",
    "j_optimizer",
    "log_sum_check",
    "merge_symbols",
    "optimal_q_divergence",
    "optimal_q_entropy",
    "recursivity_bounds",
    "VariationalReport",
    "j_variational",
    "variational_divergence",
    "variational_entropy",
    "variational_i_alpha",
    "variational_k_alpha",
]
