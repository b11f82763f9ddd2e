"""Renyi entropy, divergence, the two order-alpha mutual informations and capacity.

Finite-order sums are evaluated in the log domain with logsumexp so that
large orders and tiny probabilities neither overflow nor underflow.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np
from rich.console import Console
from scipy.special import logsumexp

from ..core.errors import (
    AlphabetMismatch,
    InfiniteValue,
    InvalidInput,
    InvalidOrder,
    NegativeWeight,
    WeightMismatch,
)
from ..core.types import (
    Channel,
    Distribution,
    Optimum,
    Order,
    OrderLike,
    OrderTag,
    check_channel_input,
    check_same_alphabet,
    make_distribution,
)
from ..optim.simplex import (
    DEFAULT_SOLVER_CONFIG,
    SolverConfig,
    gibbs_objective,
    maximize_on_simplices,
    maximize_stateful,
    minimize_on_simplices,
)
from .shannon import LN2, capacity, entropy, kl_divergence, mutual_information

console = Console(stderr=True)


@dataclass(frozen=True, eq=False)
class AlphaVector:
    """Probability vector of exponents for the generalized divergence."""

    weights: np.ndarray

    def __post_init__(self):
        weights = np.array(self.weights, dtype=float)
        if weights.ndim != 1 or weights.size < 2:
            raise WeightMismatch("an exponent vector needs at least two weights", "renyi")
        if np.any(weights < 0):
            raise NegativeWeight("exponent weights must be non-negative", "renyi")
        if abs(weights.sum() - 1.0) > 1e-12:
            raise WeightMismatch(f"exponent weights sum to {weights.sum()!r}, not 1", "renyi")
        weights.setflags(write=False)
        object.__setattr__(self, "weights", weights)

    def __len__(self) -> int:
        return int(self.weights.size)


class AlphaCapacity(NamedTuple):
    """Order-alpha capacity with the maximizing input and the K-based value."""

    value: float
    argmax: Distribution
    k_value: float


def _log_probs(p: np.ndarray) -> np.ndarray:
    out = np.full(p.shape, -np.inf)
    np.log(p, out=out, where=p > 0)
    return out


def renyi_entropy(P: Distribution, a: OrderLike) -> float:
    """H_a(P) in bits for any order, including the limits 0, 1 and inf."""
    order = Order.of(a)
    if order.tag is OrderTag.ZERO:
        return math.log2(int(np.count_nonzero(P.probs > 0)))
    if order.tag is OrderTag.ONE:
        return entropy(P)
    if order.tag is OrderTag.INFINITY:
        return float(-math.log2(P.probs.max()))
    alpha = order.value
    p = P.probs[P.probs > 0]
    value = float(logsumexp(alpha * np.log(p)) / ((1.0 - alpha) * LN2))
    return max(value, 0.0)


def renyi_divergence(P1: Distribution, P2: Distribution, a: OrderLike) -> float:
    """D_a(P1||P2) in bits for any order; +inf exactly when the support conditions fail.

    Args:
        P1: First distribution
        P2: Second distribution
        a: Order (Order, number or "inf")

    Returns:
        Non-negative extended real
    """
    check_same_alphabet(P1, P2, module="renyi")
    order = Order.of(a)
    p1, p2 = P1.probs, P2.probs
    on_p1 = p1 > 0
    if order.tag is OrderTag.ONE:
        return kl_divergence(P1, P2)
    if np.array_equal(p1, p2):
        return 0.0
    if order.tag is OrderTag.ZERO:
        mass = float(p2[on_p1].sum())
        return math.inf if mass <= 0 else max(-math.log2(mass), 0.0)
    dominated = bool(np.all(p2[on_p1] > 0))
    if order.tag is OrderTag.INFINITY:
        if not dominated:
            return math.inf
        return max(float(np.log2(np.max(p1[on_p1] / p2[on_p1]))), 0.0)
    alpha = order.value
    if alpha > 1 and not dominated:
        return math.inf
    common = on_p1 & (p2 > 0)
    if not np.any(common):
        return math.inf
    terms = alpha * np.log(p1[common]) + (1.0 - alpha) * np.log(p2[common])
    return max(float(logsumexp(terms) / ((alpha - 1.0) * LN2)), 0.0)


def _solver_config(config: SolverConfig, tol: Optional[float]) -> SolverConfig:
    if tol is None:
        return config
    if tol <= 0:
        raise InvalidInput("tol must be positive", "renyi")
    return config.model_copy(update={"tol": tol})


def _mi_order(a: OrderLike) -> Order:
    order = Order.of(a)
    if order.tag in (OrderTag.ZERO, OrderTag.INFINITY):
        raise InvalidOrder("order-alpha mutual information needs a finite order", "renyi")
    return order


def _row_tilts(P: Distribution, W: Channel, q: np.ndarray, alpha: float):
    """Per-row log normalizers and tilted rows W^a Q^{1-a} / S_x over S(P)."""
    rows = np.flatnonzero(P.probs > 0)
    log_w = _log_probs(W.rows[rows])
    log_q = _log_probs(q)
    with np.errstate(invalid="ignore"):
        terms = np.where(np.isfinite(log_w), alpha * log_w + (1.0 - alpha) * log_q, -np.inf)
    log_s = logsumexp(terms, axis=1)
    tilts = np.exp(terms - log_s[:, None])
    return P.probs[rows], log_s, tilts


def i_alpha_objective(P: Distribution, W: Channel, alpha: float):
    """Objective sum_x P(x) D_a(W(.|x)||Q) with its gradient in Q."""

    def objective(x: np.ndarray):
        q = x[0]
        weights, log_s, tilts = _row_tilts(P, W, q, alpha)
        value = float(weights @ log_s) / ((alpha - 1.0) * LN2)
        ratio = np.zeros_like(q)
        np.divide(weights @ tilts, q, out=ratio, where=q > 0)
        return value, (-ratio / LN2)[None, :]

    return objective


def k_alpha_objective(P: Distribution, W: Channel, alpha: float):
    """Objective D_a(P o W || P x Q) with its gradient in Q."""

    def objective(x: np.ndarray):
        q = x[0]
        weights, log_s, tilts = _row_tilts(P, W, q, alpha)
        log_total = logsumexp(log_s, b=weights)
        value = float(log_total) / ((alpha - 1.0) * LN2)
        mix = np.exp(np.log(weights) + log_s - log_total)
        ratio = np.zeros_like(q)
        np.divide(mix @ tilts, q, out=ratio, where=q > 0)
        return value, (-ratio / LN2)[None, :]

    return objective


def _output_mask(P: Distribution, W: Channel) -> np.ndarray:
    return ((P.probs @ W.rows) > 0)[None, :]


def i_alpha(
    P: Distribution,
    W: Channel,
    a: OrderLike,
    tol: Optional[float] = None,
    config: SolverConfig = DEFAULT_SOLVER_CONFIG,
    warm_start: Optional[np.ndarray] = None,
) -> Optimum:
    """I_a(P,W) = min_Q sum_x P(x) D_a(W(.|x)||Q).

    The minimization runs over Q supported on S(PW). Order 1 returns I(P,W).

    Returns:
        Optimum(value, argmin Q)
    """
    check_channel_input(P, W, module="renyi")
    order = _mi_order(a)
    if order.tag is OrderTag.ONE:
        return Optimum(mutual_information(P, W), make_distribution(P.probs @ W.rows))
    cfg = _solver_config(config, tol)
    x0 = None if warm_start is None else np.asarray(warm_start, dtype=float)[None, :]
    result = minimize_on_simplices(
        i_alpha_objective(P, W, order.value), _output_mask(P, W), cfg, x0=x0, module="renyi"
    )
    return Optimum(max(result.value, 0.0), make_distribution(result.point[0]))


def k_alpha(
    P: Distribution,
    W: Channel,
    a: OrderLike,
    tol: Optional[float] = None,
    config: SolverConfig = DEFAULT_SOLVER_CONFIG,
) -> Optimum:
    """K_a(P,W) = min_Q D_a(P o W || P x Q), minimized over Q supported on S(PW)."""
    check_channel_input(P, W, module="renyi")
    order = _mi_order(a)
    if order.tag is OrderTag.ONE:
        return Optimum(mutual_information(P, W), make_distribution(P.probs @ W.rows))
    cfg = _solver_config(config, tol)
    result = minimize_on_simplices(
        k_alpha_objective(P, W, order.value), _output_mask(P, W), cfg, module="renyi"
    )
    return Optimum(max(result.value, 0.0), make_distribution(result.point[0]))


def _sibson_terms(p: np.ndarray, W: Channel, alpha: float):
    # A_y = sum_x P(x) W(y|x)^a, computed in logs
    log_w = _log_probs(W.rows)
    log_a = logsumexp(alpha * log_w, axis=0, b=p[:, None])
    reachable = np.isfinite(log_a)
    return log_w, log_a, reachable


def k_alpha_closed_form(P: Distribution, W: Channel, a: OrderLike) -> Optimum:
    """Closed-form K_a(P,W) = (a/(a-1)) log sum_y (sum_x P(x) W(y|x)^a)^{1/a}.

    The minimizing Q is proportional to (sum_x P(x) W(y|x)^a)^{1/a}.
    """
    check_channel_input(P, W, module="renyi")
    order = _mi_order(a)
    if order.tag is OrderTag.ONE:
        return Optimum(mutual_information(P, W), make_distribution(P.probs @ W.rows))
    alpha = order.value
    _, log_a, reachable = _sibson_terms(P.probs, W, alpha)
    scaled = log_a[reachable] / alpha
    log_z = logsumexp(scaled)
    q = np.zeros(W.output_size)
    q[reachable] = np.exp(scaled - log_z)
    value = alpha / (alpha - 1.0) * float(log_z) / LN2
    return Optimum(max(value, 0.0), make_distribution(q))


def _k_closed_objective(W: Channel, alpha: float):
    """K_a as a function of the input distribution, with its gradient."""

    def objective(x: np.ndarray):
        p = x[0]
        log_w, log_a, reachable = _sibson_terms(p, W, alpha)
        scaled = log_a[reachable] / alpha
        log_z = logsumexp(scaled)
        value = alpha / (alpha - 1.0) * float(log_z) / LN2
        # dZ/dP(x) = (1/a) sum_y A_y^{1/a - 1} W(y|x)^a
        weights = np.exp(scaled - log_a[reachable] - log_z)
        w_alpha = np.exp(alpha * log_w[:, reachable])
        grad = (w_alpha @ weights) / ((alpha - 1.0) * LN2)
        return value, grad[None, :]

    return objective


def c_alpha(
    W: Channel,
    a: OrderLike,
    tol: Optional[float] = None,
    config: SolverConfig = DEFAULT_SOLVER_CONFIG,
) -> AlphaCapacity:
    """C_a(W) = max_P I_a(P,W), together with max_P K_a(P,W).

    The outer ascent uses the envelope gradient dI_a/dP(x) = D_a(W(.|x)||Q*),
    with each inner minimization warm started from the previous Q*.
    """
    order = _mi_order(a)
    cfg = _solver_config(config, tol)
    if order.tag is OrderTag.ONE:
        shannon = capacity(W, tol=max(cfg.tol, 1e-12))
        return AlphaCapacity(shannon.value, shannon.argmax, shannon.value)
    alpha = order.value
    outer_cfg = cfg.model_copy(update={"restarts": 1})
    inner_cold = cfg.model_copy(update={"restarts": 1})
    inner_warm = cfg.model_copy(update={"restarts": 1, "max_iter": 1})

    def make_objective():
        # Inner warm starts stay within one start point
        state = {"q": None}

        def objective(x: np.ndarray):
            P = make_distribution(x[0])
            warm = state["q"]
            if warm is not None and not np.array_equal(warm > 0, (P.probs @ W.rows) > 0):
                warm = None
            inner = i_alpha(P, W, order, config=inner_warm if warm is not None else inner_cold,
                            warm_start=warm)
            state["q"] = inner.point.probs
            q = Distribution(inner.point.probs)
            grad = np.array([renyi_divergence(W.row(x_), q, order) for x_ in range(W.input_size)])
            return inner.value, grad[None, :]

        return objective

    mask = np.ones((1, W.input_size), dtype=bool)
    result = maximize_stateful(make_objective, mask, outer_cfg, module="renyi")
    argmax = make_distribution(result.point[0])

    k_result = maximize_on_simplices(_k_closed_objective(W, alpha), mask, outer_cfg, module="renyi")
    k_value = max(k_result.value, 0.0)
    value = max(result.value, 0.0)
    if abs(value - k_value) > 10 * max(cfg.tol, 1e-9):
        console.print(
            f"[yellow]renyi: max_P I_a = {value:.12g} and max_P K_a = {k_value:.12g} "
            f"differ at order {alpha}[/yellow]"
        )
    return AlphaCapacity(value, argmax, k_value)


def _check_family(dists: Sequence[Distribution], minimum: int, module: str = "renyi") -> int:
    if len(dists) < minimum:
        raise InvalidInput(f"need at least {minimum} distributions, got {len(dists)}", module)
    return check_same_alphabet(*dists, module=module)


def _active_logs(dists: Sequence[Distribution], alpha: AlphaVector):
    if len(dists) != len(alpha):
        raise WeightMismatch(
            f"{len(dists)} distributions but {len(alpha)} exponent weights", "renyi"
        )
    _check_family(dists, 2)
    active = [i for i, w in enumerate(alpha.weights) if w > 0]
    logs = np.vstack([_log_probs(dists[i].probs) for i in active])
    weights = alpha.weights[active]
    face = np.all(np.isfinite(logs), axis=0)
    return logs, weights, face


def generalized_renyi_divergence(dists: Sequence[Distribution], alpha: AlphaVector) -> float:
    """D_alpha(P_1,...,P_{k+1}) = -log sum_x prod_i P_i(x)^{alpha_i}.

    Distributions with zero weight drop out (0^0 = 1).
    """
    logs, weights, face = _active_logs(dists, alpha)
    if not np.any(face):
        return math.inf
    log_sum = logsumexp(weights @ logs[:, face])
    return max(float(-log_sum / LN2), 0.0)


def geometric_center(dists: Sequence[Distribution], alpha: AlphaVector) -> Distribution:
    """Normalized weighted geometric mean prod_i P_i(x)^{alpha_i}."""
    logs, weights, face = _active_logs(dists, alpha)
    if not np.any(face):
        raise InfiniteValue("the weighted geometric mean vanishes everywhere", "renyi")
    combined = weights @ logs[:, face]
    center = np.zeros(logs.shape[1])
    center[face] = np.exp(combined - logsumexp(combined))
    return make_distribution(center)


def generalized_divergence_variational(
    dists: Sequence[Distribution],
    alpha: AlphaVector,
    tol: Optional[float] = None,
    config: SolverConfig = DEFAULT_SOLVER_CONFIG,
) -> Optimum:
    """min_Q sum_j alpha_j D(Q||P_j), minimized on the common support face.

    Raises:
        InfiniteValue: when no symbol is in every weighted support
    """
    logs, weights, face = _active_logs(dists, alpha)
    if not np.any(face):
        raise InfiniteValue("no Q makes every weighted divergence finite", "renyi")
    cfg = _solver_config(config, tol)
    anchor = weights @ np.where(face, logs, 0.0)
    result = minimize_on_simplices(gibbs_objective(anchor, face), face[None, :], cfg, module="renyi")
    return Optimum(max(result.value, 0.0), make_distribution(result.point[0]))


def family_divergence(
    F1: Sequence[Distribution], F2: Sequence[Distribution], a: OrderLike
) -> float:
    """min over P in F1, P' in F2 of D_a(P||P')."""
    if not F1 or not F2:
        raise InvalidInput("families must be non-empty", "renyi")
    _check_family(list(F1) + list(F2), 1)
    return min(renyi_divergence(p, p_prime, a) for p in F1 for p_prime in F2)


def tilt(P1: Distribution, P2: Distribution, alpha: float) -> Optional[np.ndarray]:
    """Unnormalized P1^a P2^{1-a} in logs, or None when it vanishes everywhere."""
    if P1.alphabet_size != P2.alphabet_size:
        raise AlphabetMismatch("distributions have different alphabet sizes", "renyi")
    log1, log2 = _log_probs(P1.probs), _log_probs(P2.probs)
    common = np.isfinite(log1) & np.isfinite(log2)
    if not np.any(common):
        return None
    out = np.full(log1.shape, -np.inf)
    out[common] = alpha * log1[common] + (1.0 - alpha) * log2[common]
    return out
