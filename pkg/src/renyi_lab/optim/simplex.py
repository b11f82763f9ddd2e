"""Minimization over products of probability simplices.

Two phases per start point: entropic mirror descent with a 1/sqrt(t) step,
then an L-BFGS-B polish in logit coordinates. Every objective returns its
value together with the gradient with respect to the simplex coordinates.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field
from scipy.optimize import minimize

from ..core.errors import InvalidInput, NonConvergence

Objective = Callable[[np.ndarray], Tuple[float, np.ndarray]]
ObjectiveFactory = Callable[[], Objective]

# Iterates never drop below this on allowed coordinates
_FLOOR = 1e-300
# Exponent clip for multiplicative updates
_MAX_EXPONENT = 700.0


def _threads_from_env() -> int:
    raw = os.environ.get("RENYI_LAB_THREADS", "0").strip() or "0"
    try:
        threads = int(raw)
    except ValueError as exc:
        raise InvalidInput(f"RENYI_LAB_THREADS must be an integer, got {raw!r}", "optim") from exc
    if threads < 0:
        raise InvalidInput("RENYI_LAB_THREADS must be >= 0", "optim")
    return threads


class SolverConfig(BaseModel):
    """Settings for minimize_on_simplices."""

    tol: float = Field(default=1e-10, gt=0, description="Objective tolerance")
    max_iter: int = Field(default=5000, ge=1, description="Mirror descent iteration cap")
    patience: int = Field(default=50, ge=1, description="Iterations without improvement before stopping")
    restarts: int = Field(default=5, ge=1, description="Number of seeded start points")
    step: float = Field(default=1.0, gt=0, description="Initial mirror step")
    warmup_tol: float = Field(
        default=1e-7, gt=0, description="Mirror phase tolerance when the polish stage runs"
    )
    polish: bool = Field(default=True, description="Refine with L-BFGS-B in logit coordinates")
    polish_max_iter: int = Field(default=1000, ge=0)
    seed: int = Field(default=0, ge=0)
    threads: int = Field(default_factory=_threads_from_env, ge=0, description="0 = sequential")


DEFAULT_SOLVER_CONFIG = SolverConfig()


@dataclass
class SimplexResult:
    """Best point found across restarts."""

    value: float
    point: np.ndarray
    iterations: int
    grad_norm: float
    converged: bool
    restarts: int = 1


def _clean(x: np.ndarray, mask: np.ndarray) -> np.ndarray:
    x = np.where(mask, np.maximum(x, _FLOOR), 0.0)
    return x / x.sum(axis=1, keepdims=True)


def _logit_gradient(x: np.ndarray, grad: np.ndarray, mask: np.ndarray) -> np.ndarray:
    g = np.where(mask, grad, 0.0)
    centered = g - (x * g).sum(axis=1, keepdims=True)
    return np.where(mask, x * centered, 0.0)


def _mirror_descent(
    objective: Objective, x: np.ndarray, mask: np.ndarray, config: SolverConfig
) -> Tuple[np.ndarray, float, int]:
    value, grad = objective(x)
    best_x, best_value = x, value
    reference = value
    stall = 0
    tol = config.warmup_tol if config.polish else config.tol
    t = 0
    for t in range(1, config.max_iter + 1):
        g = np.where(mask, np.nan_to_num(grad, nan=0.0, posinf=1e300, neginf=-1e300), 0.0)
        centered = np.where(mask, g - (x * g).sum(axis=1, keepdims=True), 0.0)
        spread = float(np.max(np.abs(centered)))
        if spread == 0.0 or not math.isfinite(spread):
            break
        eta = config.step / (math.sqrt(t) * spread)
        logits = np.where(mask, np.log(x, where=mask, out=np.zeros_like(x)) - eta * centered, -np.inf)
        logits -= logits.max(axis=1, keepdims=True)
        x = _clean(np.exp(np.maximum(logits, -_MAX_EXPONENT)), mask)
        value, grad = objective(x)
        if value < best_value:
            best_x, best_value = x, value
        if best_value < reference - tol:
            reference = best_value
            stall = 0
        else:
            stall += 1
            if stall >= config.patience:
                break
    return best_x, best_value, t


def _polish(
    objective: Objective, x: np.ndarray, mask: np.ndarray, config: SolverConfig
) -> Tuple[np.ndarray, float, int]:
    blocks, dim = x.shape
    index = np.flatnonzero(mask.reshape(-1))

    def to_point(z: np.ndarray) -> np.ndarray:
        logits = np.full(blocks * dim, -np.inf)
        logits[index] = z
        logits = logits.reshape(blocks, dim)
        logits -= logits.max(axis=1, keepdims=True)
        return _clean(np.exp(np.maximum(logits, -_MAX_EXPONENT)), mask)

    def fun(z: np.ndarray) -> Tuple[float, np.ndarray]:
        point = to_point(z)
        value, grad = objective(point)
        if not math.isfinite(value):
            return 1e300, np.zeros_like(z)
        return value, _logit_gradient(point, grad, mask).reshape(-1)[index]

    z0 = np.log(x.reshape(-1)[index])
    result = minimize(
        fun,
        z0,
        jac=True,
        method="L-BFGS-B",
        options={"maxiter": config.polish_max_iter, "ftol": 1e-16, "gtol": 1e-13},
    )
    point = to_point(result.x)
    value, _ = objective(point)
    return point, value, int(result.nit)


def _single_start(
    objective: Objective, x0: np.ndarray, mask: np.ndarray, config: SolverConfig
) -> SimplexResult:
    x, value, iterations = _mirror_descent(objective, _clean(x0, mask), mask, config)
    if config.polish and config.polish_max_iter > 0:
        polished, polished_value, polish_iterations = _polish(objective, x, mask, config)
        iterations += polish_iterations
        if polished_value <= value:
            x, value = polished, polished_value
    _, grad = objective(x)
    grad_norm = float(np.max(np.abs(_logit_gradient(x, grad, mask))))
    converged = grad_norm <= math.sqrt(config.tol) or not np.any(mask.sum(axis=1) > 1)
    return SimplexResult(value=float(value), point=x, iterations=iterations,
                         grad_norm=grad_norm, converged=bool(converged))


def start_points(mask: np.ndarray, config: SolverConfig, x0: Optional[np.ndarray] = None) -> List[np.ndarray]:
    """Seeded Dirichlet start points restricted to the allowed coordinates.

    The first start is x0 when given, otherwise the barycenter of each face.
    """
    first = mask / mask.sum(axis=1, keepdims=True) if x0 is None else np.asarray(x0, dtype=float)
    points = [first]
    children = np.random.SeedSequence(config.seed).spawn(max(config.restarts - 1, 0))
    for child in children:
        rng = np.random.default_rng(child)
        draw = rng.dirichlet(np.ones(mask.shape[1]), size=mask.shape[0])
        points.append(np.where(mask, draw, 0.0))
    return points


def minimize_on_simplices(
    objective: Objective,
    mask: np.ndarray,
    config: SolverConfig = DEFAULT_SOLVER_CONFIG,
    x0: Optional[np.ndarray] = None,
    raise_on_failure: bool = True,
    module: str = "optim",
) -> SimplexResult:
    """Minimize a function of a stack of probability vectors.

    Args:
        objective: Maps a (blocks, dim) array of row distributions to (value, gradient)
        mask: Boolean (blocks, dim) array of coordinates each row may use
        config: Solver settings
        x0: Optional warm start used as the first start point
        raise_on_failure: Raise NonConvergence when the stationarity certificate fails
        module: Module name attached to NonConvergence

    Returns:
        SimplexResult for the best restart
    """
    return minimize_stateful(lambda: objective, mask, config, x0, raise_on_failure, module)


def minimize_stateful(
    make_objective: ObjectiveFactory,
    mask: np.ndarray,
    config: SolverConfig = DEFAULT_SOLVER_CONFIG,
    x0: Optional[np.ndarray] = None,
    raise_on_failure: bool = True,
    module: str = "optim",
) -> SimplexResult:
    """minimize_on_simplices for objectives that carry state between calls.

    make_objective is called once per start point, so state such as an inner
    warm start never crosses restarts, threaded or not.
    """
    mask = np.atleast_2d(np.asarray(mask, dtype=bool))
    if np.any(mask.sum(axis=1) == 0):
        raise InvalidInput("every simplex block needs at least one allowed coordinate", module)

    starts = start_points(mask, config, x0)
    if config.threads > 0 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as executor:
            results = list(executor.map(lambda s: _single_start(make_objective(), s, mask, config), starts))
    else:
        results = [_single_start(make_objective(), s, mask, config) for s in starts]

    # First minimum in start order keeps the reduction deterministic
    best = results[0]
    for result in results[1:]:
        if result.value < best.value:
            best = result
    best.restarts = len(results)
    best.iterations = sum(r.iterations for r in results)
    if raise_on_failure and not best.converged:
        raise NonConvergence(
            f"simplex solver stopped with logit gradient {best.grad_norm:.3g} "
            f"above {math.sqrt(config.tol):.3g}",
            module,
        )
    return best


def _negate(objective: Objective) -> Objective:
    def negated(x: np.ndarray) -> Tuple[float, np.ndarray]:
        value, grad = objective(x)
        return -value, -grad

    return negated


def maximize_on_simplices(
    objective: Objective,
    mask: np.ndarray,
    config: SolverConfig = DEFAULT_SOLVER_CONFIG,
    x0: Optional[np.ndarray] = None,
    raise_on_failure: bool = True,
    module: str = "optim",
) -> SimplexResult:
    """Maximize by minimizing the negated objective."""
    return maximize_stateful(lambda: objective, mask, config, x0, raise_on_failure, module)


def maximize_stateful(
    make_objective: ObjectiveFactory,
    mask: np.ndarray,
    config: SolverConfig = DEFAULT_SOLVER_CONFIG,
    x0: Optional[np.ndarray] = None,
    raise_on_failure: bool = True,
    module: str = "optim",
) -> SimplexResult:
    result = minimize_stateful(lambda: _negate(make_objective()), mask, config, x0, raise_on_failure, module)
    result.value = -result.value
    return result


def gibbs_objective(anchor: np.ndarray, face: np.ndarray, scale: float = 1.0) -> Objective:
    """Objective scale * sum_x Q(x) (ln Q(x) - anchor(x)) / ln 2 on a single simplex.

    Its minimizer over the face is proportional to exp(anchor).
    """
    anchor = np.where(face, anchor, 0.0)

    def objective(x: np.ndarray) -> Tuple[float, np.ndarray]:
        q = x[0]
        on = face & (q > 0)
        log_q = np.zeros_like(q)
        np.log(q, out=log_q, where=on)
        value = scale * float(q[on] @ (log_q[on] - anchor[on])) / math.log(2.0)
        grad = np.where(face, scale * (log_q + 1.0 - anchor) / math.log(2.0), 0.0)
        return value, grad[None, :]

    return objective
