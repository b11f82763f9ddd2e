"""Simplex solvers and brute-force grid oracles."""

from .simplex import (
    DEFAULT_SOLVER_CONFIG,
    SimplexResult,
    SolverConfig,
    maximize_on_simplices,
    maximize_stateful,
    minimize_on_simplices,
    minimize_stateful,
    gibbs_objective,
    start_points,
)
from .grid import grid_maximum, grid_minimum, simplex_grid

__all__ = [
    "DEFAULT_SOLVER_CONFIG",
    "SimplexResult",
    "SolverConfig",
    "maximize_on_simplices",
    "maximize_stateful",
    "minimize_on_simplices",
    "minimize_stateful",
    "gibbs_objective",
    "start_points",
    "grid_maximum",
    "grid_minimum",
    "simplex_grid",
]
