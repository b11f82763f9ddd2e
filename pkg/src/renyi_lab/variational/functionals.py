"""The G and J functionals, their closed-form optimizers and the recursivity bounds."""

import math
from typing import NamedTuple

import numpy as np
from scipy.special import logsumexp

from ..core.errors import DegenerateSplit, DegenerateTilting, InvalidInput
from ..core.extended import ext_add, ext_scale
from ..core.types import (
    Distribution,
    OrderLike,
    absolutely_continuous,
    check_same_alphabet,
    finite_alpha,
    make_distribution,
)
from ..measures.renyi import renyi_entropy, tilt
from ..measures.shannon import LN2, entropy, kl_divergence

# Relative slack for the exact sandwich inequalities
SANDWICH_SLACK = 1e-12
# Binary split entropies below this make the recursivity constant undefined
SPLIT_THRESHOLD = 1e-12


class RecursivityBounds(NamedTuple):
    c_actual: float
    c_lower: float
    c_upper: float


def g_entropy(P: Distribution, Q: Distribution, a: OrderLike) -> float:
    """G_a(P;Q) = (a/(a-1)) D(Q||P) + H(Q).

    An upper bound on H_a(P) for a > 1 and a lower bound for a < 1.
    """
    check_same_alphabet(P, Q, module="variational")
    alpha = finite_alpha(a, "variational")
    return ext_add(ext_scale(alpha / (alpha - 1.0), kl_divergence(Q, P)), entropy(Q))


def g_divergence(P1: Distribution, P2: Distribution, Q: Distribution, a: OrderLike) -> float:
    """G_a(P1,P2;Q) = (a/(1-a)) D(Q||P1) + D(Q||P2)."""
    check_same_alphabet(P1, P2, Q, module="variational")
    alpha = finite_alpha(a, "variational")
    return ext_add(ext_scale(alpha / (1.0 - alpha), kl_divergence(Q, P1)), kl_divergence(Q, P2))


def optimal_q_entropy(P: Distribution, a: OrderLike) -> Distribution:
    """Q*(x) = P(x)^a / sum P^a, the unique optimizer of G_a(P; .)."""
    alpha = finite_alpha(a, "variational")
    on = P.probs > 0
    logits = alpha * np.log(P.probs[on])
    q = np.zeros(P.alphabet_size)
    q[on] = np.exp(logits - logsumexp(logits))
    return make_distribution(q)


def optimal_q_divergence(P1: Distribution, P2: Distribution, a: OrderLike) -> Distribution:
    """Q*(x) proportional to P1(x)^a P2(x)^{1-a}.

    Raises:
        DegenerateTilting: when the normalizer is 0 (disjoint supports) or
            infinite (a > 1 with P1 not dominated by P2)
    """
    check_same_alphabet(P1, P2, module="variational")
    alpha = finite_alpha(a, "variational")
    if alpha > 1 and not absolutely_continuous(P1, P2):
        raise DegenerateTilting("normalizer is infinite: P1 puts mass where P2 has none")
    logits = tilt(P1, P2, alpha)
    if logits is None:
        raise DegenerateTilting("normalizer is zero: P1 and P2 have disjoint supports")
    finite = np.isfinite(logits)
    q = np.zeros(P1.alphabet_size)
    q[finite] = np.exp(logits[finite] - logsumexp(logits[finite]))
    return make_distribution(q)


def j_functional(P1: Distribution, P2: Distribution, alpha: float, beta: float) -> float:
    """J_{a,b}(P1,P2) = -log sum_{x in S(P1)} P1(x)^a P2(x)^b.

    Zero P2 entries contribute 0 for b > 0, 1 for b = 0 and +inf for b < 0,
    so the value ranges over the extended reals.
    """
    check_same_alphabet(P1, P2, module="variational")
    if alpha <= 0:
        raise InvalidInput(f"J needs alpha > 0, got {alpha}", "variational")
    on1 = P1.probs > 0
    on2 = P2.probs > 0
    if beta < 0 and np.any(on1 & ~on2):
        return -math.inf
    face = on1 & on2 if beta > 0 else on1
    if not np.any(face):
        return math.inf
    log_p2 = np.zeros(P2.alphabet_size)
    np.log(P2.probs, out=log_p2, where=on2)
    terms = alpha * np.log(P1.probs[face]) + beta * log_p2[face]
    return float(-logsumexp(terms) / LN2)


def j_optimizer(P1: Distribution, P2: Distribution, alpha: float, beta: float) -> Distribution:
    """Minimizer of the J objective, proportional to P1^a P2^b on its face."""
    on1 = P1.probs > 0
    on2 = P2.probs > 0
    face = on1 & on2 if beta > 0 else on1
    if not np.any(face) or (beta < 0 and np.any(on1 & ~on2)):
        raise DegenerateTilting("J has no finite optimizer for these supports")
    log_p2 = np.zeros(P2.alphabet_size)
    np.log(P2.probs, out=log_p2, where=on2)
    logits = alpha * np.log(P1.probs[face]) + beta * log_p2[face]
    q = np.zeros(P1.alphabet_size)
    q[face] = np.exp(logits - logsumexp(logits))
    return make_distribution(q)


def log_sum_check(P: Distribution, Q: Distribution, a: OrderLike) -> bool:
    """H_a(P) <= G_a(P;Q) for a > 1 and H_a(P) >= G_a(P;Q) for a < 1, for Q << P."""
    alpha = finite_alpha(a, "variational")
    if not absolutely_continuous(Q, P):
        raise InvalidInput("log-sum check needs Q << P", "variational")
    h = renyi_entropy(P, alpha)
    g = g_entropy(P, Q, alpha)
    slack = SANDWICH_SLACK * max(1.0, abs(h))
    if alpha > 1:
        return h <= g + slack
    return h >= g - slack


def merge_symbols(P: Distribution, x1: int, x2: int) -> Distribution:
    """P' with x2 folded into x1."""
    merged = P.probs.copy()
    merged[x1] += merged[x2]
    return make_distribution(np.delete(merged, x2))


def recursivity_bounds(P: Distribution, x1: int, x2: int, a: OrderLike) -> RecursivityBounds:
    """Constant c in H_a(P) = H_a(P') + c H_a(binary split) and its two-sided bounds.

    P' merges x1 and x2. For a > 1:
    (p1^a + p2^a) / sum P^a <= c <= (p1 + p2)^a / sum P'^a,
    and the two expressions swap roles for a < 1.

    Raises:
        DegenerateSplit: when the split entropy is (numerically) 0
    """
    alpha = finite_alpha(a, "variational")
    k = P.alphabet_size
    if x1 == x2 or not (0 <= x1 < k and 0 <= x2 < k):
        raise InvalidInput(f"need two distinct symbols in [0, {k}), got {x1}, {x2}", "variational")
    p1, p2 = P[x1], P[x2]
    if p1 + p2 <= 0:
        raise InvalidInput("merged symbols carry no probability", "variational")
    merged = merge_symbols(P, x1, x2)
    h_full = renyi_entropy(P, alpha)
    h_merged = renyi_entropy(merged, alpha)
    split = make_distribution([p1, p2])
    h_split = renyi_entropy(split, alpha)
    if h_split < SPLIT_THRESHOLD:
        raise DegenerateSplit(
            f"split ({split[0]:.3g}, {split[1]:.3g}) has zero entropy; c is undefined",
            h_full,
            h_merged,
        )
    c = (h_full - h_merged) / h_split
    power_full = float(np.exp(logsumexp(alpha * np.log(P.probs[P.probs > 0]))))
    power_merged = float(np.exp(logsumexp(alpha * np.log(merged.probs[merged.probs > 0]))))
    first = (p1**alpha + p2**alpha) / power_full
    second = (p1 + p2) ** alpha / power_merged
    if alpha > 1:
        return RecursivityBounds(c, first, second)
    return RecursivityBounds(c, second, first)
