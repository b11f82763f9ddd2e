"""Numerical optimization of the variational characterizations.

Each solver returns a VariationalReport that pairs the value computed from the
definition with the optimum found by the simplex solver.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Union

import numpy as np

from ..core.types import (
    Channel,
    Distribution,
    OrderLike,
    check_channel_input,
    check_same_alphabet,
    finite_alpha,
    make_channel,
    make_distribution,
)
from ..measures.renyi import i_alpha, k_alpha, renyi_divergence, renyi_entropy
from ..measures.shannon import LN2
from ..optim.simplex import (
    DEFAULT_SOLVER_CONFIG,
    SimplexResult,
    SolverConfig,
    gibbs_objective,
    maximize_on_simplices,
    maximize_stateful,
    minimize_on_simplices,
    minimize_stateful,
)
from .functionals import j_functional, j_optimizer, optimal_q_divergence, optimal_q_entropy


@dataclass
class VariationalReport:
    """Direct value, variational optimum and the optimizer that attains it."""

    direct_value: float
    variational_value: float
    optimizer: Optional[Union[Distribution, Channel]]
    gap: float
    iterations: int
    closed_form: Optional[Union[Distribution, Channel]] = None
    optimizer_deviation: Optional[float] = None
    extras: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def build(
        cls,
        direct: float,
        variational: float,
        optimizer=None,
        iterations: int = 0,
        closed_form=None,
    ) -> "VariationalReport":
        if math.isinf(direct) and direct == variational:
            gap = 0.0
        else:
            gap = abs(direct - variational)
        deviation = None
        if optimizer is not None and closed_form is not None:
            deviation = float(np.max(np.abs(_array(optimizer) - _array(closed_form))))
        return cls(direct, variational, optimizer, gap, iterations, closed_form, deviation)

    def to_dict(self) -> Dict[str, Any]:
        doc: Dict[str, Any] = {
            "direct": self.direct_value,
            "variational": self.variational_value,
            "gap": self.gap,
            "iterations": self.iterations,
        }
        if self.optimizer is not None:
            doc["optimizer"] = self.optimizer.tolist()
        if self.closed_form is not None:
            doc["closed_form"] = self.closed_form.tolist()
        if self.optimizer_deviation is not None:
            doc["optimizer_deviation"] = self.optimizer_deviation
        doc.update(self.extras)
        return doc


def _array(obj: Union[Distribution, Channel]) -> np.ndarray:
    return obj.probs if isinstance(obj, Distribution) else obj.rows


def _config(config: SolverConfig, tol: Optional[float]) -> SolverConfig:
    return config if tol is None else config.model_copy(update={"tol": tol})


def _optimize(objective, mask, config, maximize: bool, x0=None) -> SimplexResult:
    solve = maximize_on_simplices if maximize else minimize_on_simplices
    return solve(objective, mask, config, x0=x0, module="variational")


def j_variational(
    P1: Distribution,
    P2: Distribution,
    alpha: float,
    beta: float,
    tol: Optional[float] = None,
    config: SolverConfig = DEFAULT_SOLVER_CONFIG,
) -> VariationalReport:
    """min over Q << P1 of a D(Q||P1) + b D(Q||P2) + (a+b-1) H(Q).

    The objective equals sum_x Q(x) (ln Q - a ln P1 - b ln P2) / ln 2. For b > 0
    the search runs on S(P1) and S(P2) jointly; for b < 0 with P1 not dominated
    by P2 the infimum is -inf and no optimizer is reported.
    """
    check_same_alphabet(P1, P2, module="variational")
    direct = j_functional(P1, P2, alpha, beta)
    if math.isinf(direct):
        return VariationalReport.build(direct, direct)
    on1, on2 = P1.probs > 0, P2.probs > 0
    face = on1 & on2 if beta > 0 else on1
    log1 = np.zeros(P1.alphabet_size)
    log2 = np.zeros(P2.alphabet_size)
    np.log(P1.probs, out=log1, where=on1)
    np.log(P2.probs, out=log2, where=on2)
    anchor = alpha * log1 + beta * log2
    result = _optimize(gibbs_objective(anchor, face), face[None, :], _config(config, tol), False)
    return VariationalReport.build(
        direct,
        result.value,
        make_distribution(result.point[0]),
        result.iterations,
        j_optimizer(P1, P2, alpha, beta),
    )


def variational_entropy(
    P: Distribution,
    a: OrderLike,
    tol: Optional[float] = None,
    config: SolverConfig = DEFAULT_SOLVER_CONFIG,
) -> VariationalReport:
    """Optimize (a/(a-1)) D(Q||P) + H(Q) over Q << P: min for a > 1, max for a < 1."""
    alpha = finite_alpha(a, "variational")
    face = P.probs > 0
    log_p = np.zeros(P.alphabet_size)
    np.log(P.probs, out=log_p, where=face)
    # In nats: (1/(a-1)) sum Q ln Q - (a/(a-1)) sum Q ln P
    objective = gibbs_objective(alpha * log_p, face, scale=1.0 / (alpha - 1.0))
    result = _optimize(objective, face[None, :], _config(config, tol), maximize=alpha < 1)
    return VariationalReport.build(
        renyi_entropy(P, alpha),
        result.value,
        make_distribution(result.point[0]),
        result.iterations,
        optimal_q_entropy(P, alpha),
    )


def variational_divergence(
    P1: Distribution,
    P2: Distribution,
    a: OrderLike,
    tol: Optional[float] = None,
    config: SolverConfig = DEFAULT_SOLVER_CONFIG,
) -> VariationalReport:
    """Optimize (a/(1-a)) D(Q||P1) + D(Q||P2) over Q << P1: max for a > 1, min for a < 1.

    When D_a(P1||P2) is infinite the report carries inf on both sides and no optimizer.
    """
    check_same_alphabet(P1, P2, module="variational")
    alpha = finite_alpha(a, "variational")
    direct = renyi_divergence(P1, P2, alpha)
    if math.isinf(direct):
        return VariationalReport.build(direct, direct)
    face = (P1.probs > 0) & (P2.probs > 0)
    log1 = np.zeros(P1.alphabet_size)
    log2 = np.zeros(P2.alphabet_size)
    np.log(P1.probs, out=log1, where=P1.probs > 0)
    np.log(P2.probs, out=log2, where=P2.probs > 0)
    # In nats: (1/(1-a)) sum Q ln Q - sum Q ((a/(1-a)) ln P1 + ln P2)
    scale = 1.0 / (1.0 - alpha)
    anchor = (alpha * scale * log1 + log2) / scale
    objective = gibbs_objective(anchor, face, scale=scale)
    result = _optimize(objective, face[None, :], _config(config, tol), maximize=alpha > 1)
    return VariationalReport.build(
        direct,
        result.value,
        make_distribution(result.point[0]),
        result.iterations,
        optimal_q_divergence(P1, P2, alpha),
    )


def _channel_objective(P: Distribution, W: Channel, rows: np.ndarray, coefficient: float):
    """I(P,V) + c D(V||W|P) as a function of the rows of V indexed by rows."""
    weights = P.probs[rows]
    log_w = np.zeros_like(W.rows[rows])
    np.log(W.rows[rows], out=log_w, where=W.rows[rows] > 0)

    def objective(v: np.ndarray):
        on = v > 0
        log_v = np.zeros_like(v)
        np.log(v, out=log_v, where=on)
        pv = weights @ v
        log_pv = np.zeros_like(pv)
        np.log(pv, out=log_pv, where=pv > 0)
        mi_terms = np.where(on, v * (log_v - log_pv[None, :]), 0.0).sum(axis=1)
        div_terms = np.where(on, v * (log_v - log_w), 0.0).sum(axis=1)
        value = float(weights @ (mi_terms + coefficient * div_terms)) / LN2
        grad = weights[:, None] * (
            (log_v - log_pv[None, :]) + coefficient * (log_v - log_w + 1.0)
        ) / LN2
        return value, np.where(on, grad, 0.0)

    return objective


def variational_i_alpha(
    P: Distribution,
    W: Channel,
    a: OrderLike,
    tol: Optional[float] = None,
    config: SolverConfig = DEFAULT_SOLVER_CONFIG,
) -> VariationalReport:
    """Optimize I(P,V) + (a/(1-a)) D(V||W|P) over channels with P o V << P o W.

    Max for a > 1, min for a < 1. Rows of V for inputs outside S(P) are set to
    W. The closed-form optimizer tilts each row toward the I_a minimizer Q*:
    V*(y|x) proportional to W(y|x)^a Q*(y)^{1-a}.
    """
    check_channel_input(P, W, module="variational")
    alpha = finite_alpha(a, "variational")
    cfg = _config(config, tol)
    direct = i_alpha(P, W, alpha, config=cfg)
    rows = np.flatnonzero(P.probs > 0)
    mask = W.rows[rows] > 0
    objective = _channel_objective(P, W, rows, alpha / (1.0 - alpha))
    result = _optimize(objective, mask, cfg, maximize=alpha > 1, x0=W.rows[rows])
    v = np.array(W.rows, dtype=float)
    v[rows] = result.point
    optimizer = make_channel(v)

    q_star = direct.point.probs
    tilted = np.array(W.rows, dtype=float)
    log_q = np.zeros_like(q_star)
    np.log(q_star, out=log_q, where=q_star > 0)
    for x in rows:
        on = W.rows[x] > 0
        logits = alpha * np.log(W.rows[x][on]) + (1.0 - alpha) * log_q[on]
        row = np.zeros(W.output_size)
        row[on] = np.exp(logits - logits.max())
        tilted[x] = row / row.sum()
    return VariationalReport.build(
        direct.value, result.value, optimizer, result.iterations, make_channel(tilted)
    )


def variational_k_alpha(
    P: Distribution,
    W: Channel,
    a: OrderLike,
    tol: Optional[float] = None,
    config: SolverConfig = DEFAULT_SOLVER_CONFIG,
) -> VariationalReport:
    """Optimize I_a(Q,W) + (1/(1-a)) D(Q||P) over input distributions Q << P.

    Max for a > 1, min for a < 1. The outer gradient uses
    dI_a(Q,W)/dQ(x) = D_a(W(.|x)||R*) at the inner minimizer R*, and every inner
    solve is warm started from the previous R*.
    """
    check_channel_input(P, W, module="variational")
    alpha = finite_alpha(a, "variational")
    cfg = _config(config, tol)
    direct = k_alpha(P, W, alpha, config=cfg)
    face = P.probs > 0
    log_p = np.zeros(P.alphabet_size)
    np.log(P.probs, out=log_p, where=face)
    coefficient = 1.0 / (1.0 - alpha)
    inner_cold = cfg.model_copy(update={"restarts": 1})
    inner_warm = cfg.model_copy(update={"restarts": 1, "max_iter": 1})

    def make_objective():
        # Each start point warm starts its own inner solves
        state: Dict[str, Optional[np.ndarray]] = {"r": None}

        def objective(x: np.ndarray):
            q = x[0]
            Q = make_distribution(q)
            warm = state["r"]
            if warm is not None and not np.array_equal(warm > 0, (Q.probs @ W.rows) > 0):
                warm = None
            inner = i_alpha(Q, W, alpha, config=inner_warm if warm is not None else inner_cold,
                            warm_start=warm)
            state["r"] = inner.point.probs
            on = face & (q > 0)
            log_q = np.zeros_like(q)
            np.log(q, out=log_q, where=on)
            divergence = float(q[on] @ (log_q[on] - log_p[on])) / LN2
            envelope = np.array(
                [renyi_divergence(W.row(x_), inner.point, alpha) for x_ in range(W.input_size)]
            )
            grad = np.where(face, envelope + coefficient * (log_q - log_p + 1.0) / LN2, 0.0)
            return inner.value + coefficient * divergence, grad[None, :]

        return objective

    # Non-convex for a < 1, so keep the configured restarts there
    outer_cfg = cfg if alpha < 1 else cfg.model_copy(update={"restarts": 1})
    solve = maximize_stateful if alpha > 1 else minimize_stateful
    result = solve(make_objective, face[None, :], outer_cfg, x0=P.probs[None, :], module="variational")
    return VariationalReport.build(
        direct.value, result.value, make_distribution(result.point[0]), result.iterations
    )
