"""Shannon entropy, KL divergence, mutual information and channel capacity.

All values are in bits. Terms with zero weight in the first argument contribute
nothing, so 0 log(0/q) = 0 for every q.
"""

import math
from typing import NamedTuple, Optional

import numpy as np
from pydantic import BaseModel, Field
from scipy.special import entr, rel_entr

from ..core.errors import InvalidInput, NonConvergence, ShapeMismatch
from ..core.types import (
    Channel,
    Distribution,
    Optimum,
    check_channel_input,
    check_same_alphabet,
    joint,
    make_distribution,
    output_distribution,
    product,
)
from ..optim.simplex import DEFAULT_SOLVER_CONFIG, SolverConfig, minimize_on_simplices

LN2 = math.log(2.0)


class CapacityConfig(BaseModel):
    """Settings for the alternating-optimization capacity iteration."""

    tol: float = Field(default=1e-9, gt=0, description="Upper minus lower bound at termination")
    max_iter: int = Field(default=10_000, ge=1)


DEFAULT_CAPACITY_CONFIG = CapacityConfig()


class CapacityOptimum(NamedTuple):
    """Capacity lower bound, the input that attains it, and the certified upper bound."""

    value: float
    argmax: Distribution
    upper_bound: float
    iterations: int


def entropy(P: Distribution) -> float:
    """H(P) in bits."""
    return float(max(entr(P.probs).sum() / LN2, 0.0))


def _kl_bits(p: np.ndarray, q: np.ndarray) -> float:
    if np.array_equal(p, q):
        return 0.0
    value = float(rel_entr(p, q).sum() / LN2)
    return max(value, 0.0)


def kl_divergence(P1: Distribution, P2: Distribution) -> float:
    """D(P1||P2) in bits; +inf unless S(P1) is inside S(P2)."""
    check_same_alphabet(P1, P2, module="shannon")
    return _kl_bits(P1.probs, P2.probs)


def pairwise_kl(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Divergence table D(A[i] || B[j]) for two stacks of probability vectors.

    Args:
        A: Array of shape (m, k)
        B: Array of shape (n, k)

    Returns:
        Array of shape (m, n) in bits
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.atleast_2d(np.asarray(B, dtype=float))
    if A.shape[-1] != B.shape[-1]:
        raise ShapeMismatch("both stacks must use the same alphabet", "shannon")
    table = rel_entr(A[:, None, :], B[None, :, :]).sum(axis=-1) / LN2
    return np.maximum(table, 0.0)


def conditional_divergence(V: Channel, W: Channel, P: Distribution) -> float:
    """D(V||W|P) = sum_x P(x) D(V(.|x)||W(.|x)) over the support of P."""
    if V.rows.shape != W.rows.shape:
        raise ShapeMismatch(f"channels have shapes {V.rows.shape} and {W.rows.shape}", "shannon")
    check_channel_input(P, W, module="shannon")
    total = 0.0
    for x in np.flatnonzero(P.probs > 0):
        d = _kl_bits(V.rows[x], W.rows[x])
        if math.isinf(d):
            return math.inf
        total += P.probs[x] * d
    return float(total)


def mutual_information(P: Distribution, W: Channel) -> float:
    """I(P,W) = H(PW) - sum_x P(x) H(W(.|x))."""
    check_channel_input(P, W, module="shannon")
    conditional = float(P.probs @ (entr(W.rows).sum(axis=1) / LN2))
    return max(entropy(output_distribution(P, W)) - conditional, 0.0)


def _divergence_average(P: Distribution, W: Channel, q: np.ndarray) -> float:
    rows = np.flatnonzero(P.probs > 0)
    return float(P.probs[rows] @ (rel_entr(W.rows[rows], q).sum(axis=1) / LN2))


def mutual_information_variational(
    P: Distribution, W: Channel, config: SolverConfig = DEFAULT_SOLVER_CONFIG
) -> Optimum:
    """Minimize sum_x P(x) D(W(.|x)||Q) over output distributions Q.

    The minimum is I(P,W), attained at the output marginal PW.

    Returns:
        Optimum(value, argmin Q)
    """
    check_channel_input(P, W, module="shannon")
    pw = P.probs @ W.rows
    mask = (pw > 0)[None, :]

    def objective(x: np.ndarray):
        q = x[0]
        grad = np.zeros_like(q)
        np.divide(-pw, q * LN2, out=grad, where=mask[0])
        return _divergence_average(P, W, q), grad[None, :]

    result = minimize_on_simplices(objective, mask, config, module="shannon")
    return Optimum(max(result.value, 0.0), make_distribution(result.point[0]))


def product_form_divergence(P: Distribution, W: Channel, Q: Distribution) -> float:
    """D(P o W || P x Q); equal to the average divergence form for every Q."""
    return kl_divergence(joint(P, W).flatten(), product(P, Q).flatten())


def capacity_bounds(W: Channel, r: np.ndarray) -> tuple:
    """Lower bound I(r,W) and upper bound max_x D(W(.|x)||rW) on the capacity."""
    q = r @ W.rows
    divergences = np.array([_kl_bits(row, q) for row in W.rows])
    lower = float(r @ divergences)
    return max(lower, 0.0), float(divergences.max())


def capacity(
    W: Channel,
    tol: Optional[float] = None,
    config: CapacityConfig = DEFAULT_CAPACITY_CONFIG,
) -> CapacityOptimum:
    """Channel capacity by the alternating-optimization fixed point.

    Args:
        W: Channel
        tol: Certificate width; overrides config.tol when given
        config: Iteration settings

    Returns:
        CapacityOptimum whose value is within tol of C(W)

    Raises:
        NonConvergence: if the certificate is not met within config.max_iter steps
    """
    tol = config.tol if tol is None else tol
    if tol <= 0:
        raise InvalidInput("tol must be positive", "shannon")
    r = np.full(W.input_size, 1.0 / W.input_size)
    for iteration in range(1, config.max_iter + 1):
        q = r @ W.rows
        divergences = np.array([_kl_bits(row, q) for row in W.rows])
        lower = max(float(r @ divergences), 0.0)
        upper = float(divergences.max())
        if upper - lower <= tol:
            return CapacityOptimum(lower, make_distribution(r), upper, iteration)
        # r(x) <- r(x) 2^{D(W_x||q)} / normalizer, shifted for stability
        logits = np.log(r) + LN2 * (divergences - divergences.max())
        r = np.exp(logits - logits.max())
        r /= r.sum()
    raise NonConvergence(
        f"capacity iteration did not certify tol={tol} within {config.max_iter} steps", "shannon"
    )
