"""Property suite behind ``renyi-lab verify``.

Every check is registered under a dotted name ``<group>.<property>`` and runs
on its own seeded generator, so adding or reordering checks never changes the
instances another check sees.
"""

import math
import zlib
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional

import numpy as np
from pydantic import BaseModel, Field

from ..codelength.campbell import (
    brute_force_min_codelength,
    campbell_code,
    ideal_codelength,
    weighted_codelength,
)
from ..core.errors import RenyiLabError
from ..core.types import Order, compose, make_distribution, output_distribution
from ..hyptest.exponents import (
    achievability_envelope,
    achievable_exponent,
    alpha_grid,
    equality_report,
    exponent_alpha,
    exponent_curve,
    false_alarm_bound,
    renyi_lower_bound,
    worst_noise_family,
)
from ..hyptest.probabilities import exact_errors, monte_carlo_errors
from ..hyptest.rules import DecisionRule, RuleKind
from ..hyptest.scenario import Scenario
from ..measures.renyi import (
    AlphaVector,
    c_alpha,
    generalized_divergence_variational,
    generalized_renyi_divergence,
    i_alpha,
    k_alpha_closed_form,
    renyi_divergence,
    renyi_entropy,
)
from ..measures.shannon import (
    capacity,
    entropy,
    kl_divergence,
    mutual_information,
    mutual_information_variational,
    product_form_divergence,
)
from ..method_of_types.enumeration import (
    EmpiricalType,
    enumerate_types,
    type_class_size,
    type_count,
    type_size_bounds_hold,
)
from ..method_of_types.lemma import deviation_bound_check, exponent_matches_product
from ..optim.simplex import DEFAULT_SOLVER_CONFIG, SolverConfig
from ..variational.functionals import (
    g_divergence,
    g_entropy,
    j_functional,
    log_sum_check,
    optimal_q_divergence,
    optimal_q_entropy,
    recursivity_bounds,
)
from ..variational.solvers import (
    j_variational,
    variational_divergence,
    variational_entropy,
    variational_i_alpha,
    variational_k_alpha,
)
from .instances import (
    UNIFORM_MIX,
    channel_mixture,
    mixture,
    property_rng,
    random_channel,
    random_distribution,
    random_scenario,
    symmetric_binary_scenario,
)
from .references import REFERENCES

# Orders sampled by the order-specific checks
ORDERS_BELOW_ONE = (0.3, 0.5, 0.9)
ORDERS_ABOVE_ONE = (1.1, 2.0, 5.0)
# Ladder used by the monotonicity checks, limits included
ORDER_LADDER = (0.0, 0.25, 0.5, 0.75, 1 - 1e-4, 1.0, 1 + 1e-4, 1.5, 2.0, 4.0, math.inf)
# Orders and tolerance of the approach to the limit orders
LIMIT_SMALL = 1e-5
LIMIT_NEAR_ONE = (1 - 1e-5, 1 + 1e-5)
LIMIT_LARGE = 1e4
LIMIT_TOL = 1e-3
# Tolerances of the optimized mutual-information forms
I_ALPHA_FORM_TOL = 1e-4
K_ALPHA_FORM_TOL = 1e-3
OPTIMIZER_TOL = 1e-6
# Block lengths of the finite-n hypothesis testing checks
BLOCK_LENGTHS = (8, 16, 32, 64)


class VerifyConfig(BaseModel):
    """Settings for run_suite."""

    seed: int = Field(default=0, ge=0, description="Root seed of every property stream")
    tol: float = Field(default=1e-8, gt=0, description="Allowed gap between optimized and direct values")
    slack: float = Field(default=1e-10, gt=0, description="Slack for closed-form inequalities")
    solver_slack: float = Field(
        default=1e-7, gt=0, description="Slack for inequalities between optimized quantities"
    )
    instances: int = Field(default=1000, ge=1, description="Instances per closed-form property")
    exhaustive_instances: int = Field(
        default=100, ge=1, description="Instances per enumeration or brute-force property"
    )
    solver_instances: int = Field(default=20, ge=1, description="Instances per solver-backed property")
    capacity_instances: int = Field(default=3, ge=1, description="Instances per nested capacity solve")
    trials: int = Field(default=20_000, ge=1, description="Monte Carlo trials")
    only: Optional[List[str]] = Field(default=None, description="Run properties with these name prefixes")


class Tally:
    """Running count of comparisons and the largest excess over the allowed bound."""

    def __init__(self):
        self.checked = 0
        self.failures = 0
        self.worst = -math.inf
        self.first_failure = ""

    def record(self, excess: float, allowed: float, label: str = "") -> None:
        self.checked += 1
        if math.isnan(excess) or excess > self.worst:
            self.worst = excess
        if not excess <= allowed:
            self.failures += 1
            if not self.first_failure:
                self.first_failure = f"{label} excess {excess:.3g} > {allowed:.3g}".strip()

    def at_most(self, lhs: float, rhs: float, slack: float, label: str = "") -> None:
        """Record lhs <= rhs + slack; equal infinities count as equal."""
        self.record(0.0 if lhs == rhs else lhs - rhs, slack, label)

    def at_least(self, lhs: float, rhs: float, slack: float, label: str = "") -> None:
        self.at_most(rhs, lhs, slack, label)

    def close(self, a: float, b: float, tol: float, label: str = "") -> None:
        self.record(0.0 if a == b else abs(a - b), tol, label)

    def holds(self, flag: bool, label: str = "") -> None:
        self.record(0.0 if flag else math.inf, 0.0, label)


@dataclass
class CheckContext:
    config: VerifyConfig
    rng: np.random.Generator
    solver: SolverConfig

    def order_below(self) -> float:
        return float(self.rng.choice(ORDERS_BELOW_ONE))

    def order_above(self) -> float:
        return float(self.rng.choice(ORDERS_ABOVE_ONE))

    def order(self) -> float:
        return float(self.rng.choice(ORDERS_BELOW_ONE + ORDERS_ABOVE_ONE))

    def size(self, low: int = 2, high: int = 6) -> int:
        return int(self.rng.integers(low, high + 1))

    def weight(self) -> float:
        return float(self.rng.uniform(0.05, 0.95))


@dataclass(frozen=True)
class PropertyCheck:
    name: str
    description: str
    run: Callable[[CheckContext], Tally]
    reference: str = ""

    @property
    def group(self) -> str:
        return self.name.split(".", 1)[0]


@dataclass
class PropertyResult:
    name: str
    group: str
    passed: bool
    instances: int
    worst: float
    detail: str = ""
    reference: str = ""

    def to_dict(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "group": self.group,
            "status": "pass" if self.passed else "fail",
            "instances": self.instances,
            "worst_excess": self.worst,
            "detail": self.detail,
            "reference": self.reference,
        }


REGISTRY: Dict[str, PropertyCheck] = {}


def register(name: str, description: str):
    def decorator(fn: Callable[[CheckContext], Tally]):
        REGISTRY[name] = PropertyCheck(name, description, fn, REFERENCES.get(name, ""))
        return fn

    return decorator


# ---------------------------------------------------------------------------
# Renyi entropy
# ---------------------------------------------------------------------------


@register("renyi_entropy.non_increasing_in_order", "H_a(P) is non-increasing in a")
def _entropy_monotone(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.instances):
        P = random_distribution(ctx.rng, ctx.size(), zeros=True)
        values = [renyi_entropy(P, a) for a in ORDER_LADDER]
        for lower, higher in zip(values, values[1:]):
            tally.at_most(higher, lower, ctx.config.slack)
    return tally


@register("renyi_entropy.concave_below_one", "H_a is concave in P for a < 1")
def _entropy_concave(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.instances):
        k = ctx.size()
        A, B = random_distribution(ctx.rng, k), random_distribution(ctx.rng, k)
        a, w = float(ctx.rng.uniform(0.05, 0.95)), ctx.weight()
        chord = w * renyi_entropy(A, a) + (1 - w) * renyi_entropy(B, a)
        tally.at_least(renyi_entropy(mixture(A, B, w), a), chord, ctx.config.slack)
    return tally


@register("renyi_entropy.order_zero", "H_0(P) = log |S(P)|, approached as a -> 0")
def _entropy_zero(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.instances):
        P = random_distribution(ctx.rng, ctx.size(), mix=UNIFORM_MIX, zeros=True)
        closed = math.log2(int(np.count_nonzero(P.probs)))
        tally.close(renyi_entropy(P, Order.zero()), closed, ctx.config.slack)
        tally.close(renyi_entropy(P, LIMIT_SMALL), closed, LIMIT_TOL, "near the limit")
    return tally


@register("renyi_entropy.order_infinity", "H_inf(P) = -log max P, approached as a -> inf")
def _entropy_infinity(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.instances):
        P = random_distribution(ctx.rng, ctx.size(), mix=UNIFORM_MIX)
        closed = -math.log2(float(P.probs.max()))
        tally.close(renyi_entropy(P, math.inf), closed, ctx.config.slack)
        tally.close(renyi_entropy(P, LIMIT_LARGE), closed, LIMIT_TOL, "near the limit")
    return tally


@register("renyi_entropy.order_one", "H_1(P) = H(P), approached from both sides")
def _entropy_one(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.instances):
        P = random_distribution(ctx.rng, ctx.size(), mix=UNIFORM_MIX)
        for a in LIMIT_NEAR_ONE:
            tally.close(renyi_entropy(P, a), entropy(P), LIMIT_TOL, "near the limit")
    return tally


@register("renyi_entropy.log_sum_inequality", "G_a(P;Q) bounds H_a(P) on the correct side")
def _entropy_log_sum(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.instances):
        k = ctx.size()
        P = random_distribution(ctx.rng, k, zeros=True)
        Q = make_distribution(random_distribution(ctx.rng, k).probs * (P.probs > 0))
        tally.holds(log_sum_check(P, Q, ctx.order()))
    return tally


@register("renyi_entropy.campbell_codelength", "Optimal weighted codelength lies in [H_t, H_t + 1]")
def _entropy_campbell(ctx: CheckContext) -> Tally:
    tally = Tally()
    slack = ctx.config.slack
    for _ in range(ctx.config.exhaustive_instances):
        P = random_distribution(ctx.rng, ctx.size(2, 5), mix=0.01)
        for lam in (0.25, 1.0, 4.0):
            h = renyi_entropy(P, 1.0 / (1.0 + lam))
            best = brute_force_min_codelength(P, lam).value
            tally.at_least(best, h, slack, "brute force")
            tally.at_most(best, h + 1.0, slack, "brute force")
            code = campbell_code(P, lam)
            tally.at_most(weighted_codelength(P, code, lam), h + 1.0, slack, "campbell code")
            q_star = optimal_q_entropy(P, 1.0 / (1.0 + lam))
            tally.close(ideal_codelength(P, q_star, lam), h, 1e-9, "ideal")
    return tally


@register("renyi_entropy.unique_optimizer", "G_a(P;Q) - H_a(P) = D(Q||Q*)/(a-1)")
def _entropy_optimizer(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.instances):
        k = ctx.size()
        P = random_distribution(ctx.rng, k, mix=UNIFORM_MIX)
        Q = random_distribution(ctx.rng, k)
        a = ctx.order()
        q_star = optimal_q_entropy(P, a)
        h = renyi_entropy(P, a)
        tally.close(g_entropy(P, q_star, a), h, 1e-9)
        tally.close(g_entropy(P, Q, a) - h, kl_divergence(Q, q_star) / (a - 1.0), 1e-9)
    return tally


@register("renyi_entropy.approximate_recursivity", "Merging two symbols obeys the recursivity bounds")
def _entropy_recursivity(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.instances):
        k = ctx.size(3, 6)
        P = random_distribution(ctx.rng, k, mix=UNIFORM_MIX)
        x1, x2 = (int(x) for x in ctx.rng.choice(k, size=2, replace=False))
        bounds = recursivity_bounds(P, x1, x2, ctx.order())
        tally.at_least(bounds.c_actual, bounds.c_lower, 1e-9, "lower")
        tally.at_most(bounds.c_actual, bounds.c_upper, 1e-9, "upper")
        tally.at_least(bounds.c_actual, 0.0, 1e-9)
        tally.at_most(bounds.c_actual, 1.0, 1e-9)
    return tally


# ---------------------------------------------------------------------------
# Renyi divergence
# ---------------------------------------------------------------------------


@register("renyi_divergence.non_decreasing_in_order", "D_a(P1||P2) is non-decreasing in a")
def _divergence_monotone(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.instances):
        k = ctx.size()
        P1 = random_distribution(ctx.rng, k, zeros=True)
        P2 = random_distribution(ctx.rng, k, mix=UNIFORM_MIX)
        values = [renyi_divergence(P1, P2, a) for a in ORDER_LADDER]
        for lower, higher in zip(values, values[1:]):
            tally.at_least(higher, lower, ctx.config.slack)
    return tally


@register("renyi_divergence.non_negative", "D_a >= 0 with equality iff P1 = P2 (a > 0)")
def _divergence_positive(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.instances):
        k = ctx.size()
        P1, P2 = random_distribution(ctx.rng, k), random_distribution(ctx.rng, k)
        for a in ORDER_LADDER[1:]:
            tally.holds(renyi_divergence(P1, P2, a) > 0, f"order {a}")
            tally.holds(renyi_divergence(P1, P1, a) == 0, f"order {a}")
    return tally


@register("renyi_divergence.convexity", "Convex in P2 for a > 1, jointly convex for a < 1")
def _divergence_convex(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.instances):
        k = ctx.size()
        A1, B1 = random_distribution(ctx.rng, k), random_distribution(ctx.rng, k)
        A2, B2 = random_distribution(ctx.rng, k), random_distribution(ctx.rng, k)
        w = ctx.weight()
        above = ctx.order_above()
        mixed = renyi_divergence(A1, mixture(A2, B2, w), above)
        chord = w * renyi_divergence(A1, A2, above) + (1 - w) * renyi_divergence(A1, B2, above)
        tally.at_most(mixed, chord, ctx.config.slack, "above one")
        below = float(ctx.rng.uniform(0.05, 0.95))
        mixed = renyi_divergence(mixture(A1, B1, w), mixture(A2, B2, w), below)
        chord = w * renyi_divergence(A1, A2, below) + (1 - w) * renyi_divergence(B1, B2, below)
        tally.at_most(mixed, chord, ctx.config.slack, "below one")
    return tally


@register("renyi_divergence.order_zero", "D_0(P1||P2) = -log P2(S(P1)), approached as a -> 0")
def _divergence_zero(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.instances):
        k = ctx.size()
        P1 = random_distribution(ctx.rng, k, mix=UNIFORM_MIX, zeros=True)
        P2 = random_distribution(ctx.rng, k, mix=UNIFORM_MIX)
        closed = -math.log2(float(P2.probs[P1.probs > 0].sum()))
        tally.close(renyi_divergence(P1, P2, Order.zero()), max(closed, 0.0), ctx.config.slack)
        tally.close(renyi_divergence(P1, P2, LIMIT_SMALL), closed, LIMIT_TOL, "near the limit")
    return tally


@register("renyi_divergence.order_infinity", "D_inf(P1||P2) = log max P1/P2, approached as a -> inf")
def _divergence_infinity(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.instances):
        k = ctx.size()
        P1 = random_distribution(ctx.rng, k, mix=UNIFORM_MIX)
        P2 = random_distribution(ctx.rng, k, mix=UNIFORM_MIX)
        closed = float(np.log2(np.max(P1.probs / P2.probs)))
        tally.close(renyi_divergence(P1, P2, math.inf), closed, ctx.config.slack)
        tally.close(renyi_divergence(P1, P2, LIMIT_LARGE), closed, LIMIT_TOL, "near the limit")
    return tally


@register("renyi_divergence.order_one", "D_1 = D, approached from both sides")
def _divergence_one(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.instances):
        k = ctx.size()
        P1 = random_distribution(ctx.rng, k, mix=UNIFORM_MIX)
        P2 = random_distribution(ctx.rng, k, mix=UNIFORM_MIX)
        for a in LIMIT_NEAR_ONE:
            tally.close(renyi_divergence(P1, P2, a), kl_divergence(P1, P2), LIMIT_TOL, "near the limit")
    return tally


@register("renyi_divergence.data_processing", "D_a(P1 W||P2 W) <= D_a(P1||P2)")
def _divergence_dpi(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.instances):
        k = ctx.size()
        P1 = random_distribution(ctx.rng, k, zeros=True)
        P2 = random_distribution(ctx.rng, k, mix=UNIFORM_MIX)
        W = random_channel(ctx.rng, k, ctx.size(2, 4))
        out1, out2 = output_distribution(P1, W), output_distribution(P2, W)
        for a in ORDER_LADDER:
            tally.at_most(renyi_divergence(out1, out2, a), renyi_divergence(P1, P2, a), ctx.config.slack)
    return tally


@register("renyi_divergence.unique_optimizer", "G_a(P1,P2;Q) - D_a(P1||P2) = D(Q||Q*)/(1-a)")
def _divergence_optimizer(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.instances):
        k = ctx.size()
        P1 = random_distribution(ctx.rng, k, mix=UNIFORM_MIX)
        P2 = random_distribution(ctx.rng, k, mix=UNIFORM_MIX)
        Q = random_distribution(ctx.rng, k)
        a = ctx.order()
        q_star = optimal_q_divergence(P1, P2, a)
        d = renyi_divergence(P1, P2, a)
        tally.close(g_divergence(P1, P2, q_star, a), d, 1e-9)
        tally.close(g_divergence(P1, P2, Q, a) - d, kl_divergence(Q, q_star) / (1.0 - a), 1e-9)
    return tally


# ---------------------------------------------------------------------------
# Order-alpha mutual informations and capacity
# ---------------------------------------------------------------------------


def _small_channel_instance(ctx: CheckContext, max_size: int = 3):
    kx, ky = ctx.size(2, max_size), ctx.size(2, max_size)
    return random_distribution(ctx.rng, kx, mix=UNIFORM_MIX), random_channel(ctx.rng, kx, ky, UNIFORM_MIX)


@register("alpha_information.order_relation", "K_a >= I_a for a > 1 and K_a <= I_a for a < 1")
def _information_order(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.solver_instances):
        P, W = _small_channel_instance(ctx)
        a = ctx.order()
        i_value = i_alpha(P, W, a, config=ctx.solver).value
        k_value = k_alpha_closed_form(P, W, a).value
        if a > 1:
            tally.at_least(k_value, i_value, ctx.config.solver_slack)
        else:
            tally.at_most(k_value, i_value, ctx.config.solver_slack)
    return tally


@register("alpha_information.entropy_bounds", "I_a(P,W) <= H(P) and K_a(P,W) <= H_{1/a}(P)")
def _information_bounds(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.instances):
        P, W = _small_channel_instance(ctx, 4)
        a = ctx.order()
        tally.at_most(k_alpha_closed_form(P, W, a).value, renyi_entropy(P, 1.0 / a), ctx.config.slack, "K")
    for _ in range(ctx.config.solver_instances):
        P, W = _small_channel_instance(ctx)
        tally.at_most(i_alpha(P, W, ctx.order(), config=ctx.solver).value, entropy(P),
                      ctx.config.solver_slack, "I")
    return tally


@register("alpha_information.i_alpha_shape", "I_a concave in P; convex in W for a < 1")
def _information_i_shape(ctx: CheckContext) -> Tally:
    tally = Tally()
    slack = ctx.config.solver_slack
    for _ in range(ctx.config.solver_instances):
        kx, ky = ctx.size(2, 3), ctx.size(2, 3)
        A, B = random_distribution(ctx.rng, kx, UNIFORM_MIX), random_distribution(ctx.rng, kx, UNIFORM_MIX)
        W = random_channel(ctx.rng, kx, ky, UNIFORM_MIX)
        V = random_channel(ctx.rng, kx, ky, UNIFORM_MIX)
        a, w = ctx.order(), ctx.weight()

        def value(P, channel, order):
            return i_alpha(P, channel, order, config=ctx.solver).value

        chord = w * value(A, W, a) + (1 - w) * value(B, W, a)
        tally.at_least(value(mixture(A, B, w), W, a), chord, slack, "concave in P")
        below = ctx.order_below()
        chord = w * value(A, W, below) + (1 - w) * value(A, V, below)
        tally.at_most(value(A, channel_mixture(W, V, w), below), chord, slack, "convex in W")
    return tally


@register(
    "alpha_information.k_alpha_shape",
    "For a > 1 K_a is concave in P and 2^{((a-1)/a) K_a} is convex in W",
)
def _information_k_shape(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.instances):
        kx, ky = ctx.size(2, 4), ctx.size(2, 4)
        A, B = random_distribution(ctx.rng, kx), random_distribution(ctx.rng, kx)
        W, V = random_channel(ctx.rng, kx, ky), random_channel(ctx.rng, kx, ky)
        a, w = ctx.order_above(), ctx.weight()

        def value(P, channel):
            return k_alpha_closed_form(P, channel, a).value

        def norm_sum(P, channel):
            return 2.0 ** ((a - 1) / a * value(P, channel))

        chord = w * value(A, W) + (1 - w) * value(B, W)
        tally.at_least(value(mixture(A, B, w), W), chord, ctx.config.slack, "concave in P")
        # K_a itself is not convex in W; the sum of output-wise a-norms is
        chord = w * norm_sum(A, W) + (1 - w) * norm_sum(A, V)
        tally.at_most(norm_sum(A, channel_mixture(W, V, w)), chord, ctx.config.slack, "norm sum convex in W")
    return tally


@register("alpha_information.capacity_equals_k_maximum", "max_P I_a(P,W) = max_P K_a(P,W)")
def _information_capacity(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.capacity_instances):
        W = random_channel(ctx.rng, 2, ctx.size(2, 3), UNIFORM_MIX)
        for a in (0.5, 2.0):
            result = c_alpha(W, a, config=ctx.solver)
            tally.close(result.value, result.k_value, 1e-5, f"order {a}")
        tally.close(c_alpha(W, 1.0).value, capacity(W).value, 1e-8, "order 1")
    return tally


@register("alpha_information.data_processing", "Post-processing the channel output cannot raise I_a or K_a")
def _information_dpi(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.instances):
        P, W1 = _small_channel_instance(ctx, 4)
        W2 = random_channel(ctx.rng, W1.output_size, ctx.size(2, 4))
        a = ctx.order()
        before = k_alpha_closed_form(P, W1, a).value
        after = k_alpha_closed_form(P, compose(W1, W2), a).value
        tally.at_most(after, before, ctx.config.slack, "K")
    for _ in range(ctx.config.solver_instances):
        P, W1 = _small_channel_instance(ctx)
        W2 = random_channel(ctx.rng, W1.output_size, ctx.size(2, 3))
        a = ctx.order()
        before = i_alpha(P, W1, a, config=ctx.solver).value
        after = i_alpha(P, compose(W1, W2), a, config=ctx.solver).value
        tally.at_most(after, before, ctx.config.solver_slack, "I")
    return tally


# ---------------------------------------------------------------------------
# Shannon measures and generalized divergences
# ---------------------------------------------------------------------------


@register("shannon.mutual_information_forms", "min_Q sum P D(W_x||Q) = D(P o W||P x PW) = I(P,W)")
def _shannon_forms(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.solver_instances):
        P, W = _small_channel_instance(ctx, 4)
        mi = mutual_information(P, W)
        tally.close(mutual_information_variational(P, W, ctx.solver).value, mi, ctx.config.tol, "min form")
        tally.close(product_form_divergence(P, W, output_distribution(P, W)), mi, ctx.config.slack)
    return tally


@register("shannon.capacity_certificate", "Capacity upper and lower bounds meet within tolerance")
def _shannon_capacity(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.solver_instances):
        W = random_channel(ctx.rng, ctx.size(2, 4), ctx.size(2, 4))
        result = capacity(W, tol=1e-9)
        tally.at_most(result.upper_bound - result.value, 0.0, 1e-9)
        tally.at_most(mutual_information(random_distribution(ctx.rng, W.input_size), W),
                      result.upper_bound, ctx.config.slack)
    return tally


@register("generalized_divergence.variational_form", "-log sum prod P_i^a_i = min_Q sum a_i D(Q||P_i)")
def _generalized_form(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.solver_instances):
        k, m = ctx.size(2, 4), ctx.size(2, 4)
        dists = [random_distribution(ctx.rng, k, mix=UNIFORM_MIX) for _ in range(m)]
        weights = AlphaVector(ctx.rng.dirichlet(np.ones(m)))
        direct = generalized_renyi_divergence(dists, weights)
        optimum = generalized_divergence_variational(dists, weights, config=ctx.solver)
        tally.close(optimum.value, direct, ctx.config.tol)
    return tally


# ---------------------------------------------------------------------------
# Variational characterizations
# ---------------------------------------------------------------------------


def _report_checks(tally: Tally, report, tol: float, optimizer_tol: Optional[float]) -> None:
    tally.record(report.gap, tol, "gap")
    if optimizer_tol is not None and report.optimizer_deviation is not None:
        tally.record(report.optimizer_deviation, optimizer_tol, "optimizer")


@register("variational.entropy_form", "H_a(P) equals the optimum of (a/(a-1)) D(Q||P) + H(Q)")
def _variational_entropy(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.solver_instances):
        P = random_distribution(ctx.rng, ctx.size(2, 5), zeros=True)
        report = variational_entropy(P, ctx.order(), config=ctx.solver)
        _report_checks(tally, report, ctx.config.tol, OPTIMIZER_TOL)
    return tally


@register("variational.divergence_form", "D_a(P1||P2) equals the optimum of (a/(1-a)) D(Q||P1) + D(Q||P2)")
def _variational_divergence(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.solver_instances):
        k = ctx.size(2, 5)
        P1 = random_distribution(ctx.rng, k, zeros=True)
        P2 = random_distribution(ctx.rng, k, mix=UNIFORM_MIX)
        report = variational_divergence(P1, P2, ctx.order(), config=ctx.solver)
        _report_checks(tally, report, ctx.config.tol, OPTIMIZER_TOL)
    return tally


@register("variational.i_alpha_form", "I_a(P,W) equals the optimum of I(P,V) + (a/(1-a)) D(V||W|P)")
def _variational_i_alpha(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.solver_instances):
        P, W = _small_channel_instance(ctx)
        report = variational_i_alpha(P, W, float(ctx.rng.choice((0.5, 2.0))), config=ctx.solver)
        _report_checks(tally, report, I_ALPHA_FORM_TOL, None)
    return tally


@register("variational.k_alpha_form", "K_a(P,W) equals the optimum of I_a(Q,W) + (1/(1-a)) D(Q||P)")
def _variational_k_alpha(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.capacity_instances * 2):
        P, W = _small_channel_instance(ctx)
        a = float(ctx.rng.choice((0.5, 2.0)))
        report = variational_k_alpha(P, W, a, config=ctx.solver)
        _report_checks(tally, report, K_ALPHA_FORM_TOL, None)
        tally.close(report.direct_value, k_alpha_closed_form(P, W, a).value, 1e-6, "closed form")
    return tally


@register(
    "variational.j_functional_form",
    "J_ab equals the optimum of a D(Q||P1) + b D(Q||P2) + (a+b-1) H(Q)",
)
def _variational_j(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.solver_instances):
        k = ctx.size(2, 5)
        P1 = random_distribution(ctx.rng, k, zeros=True)
        P2 = random_distribution(ctx.rng, k, mix=UNIFORM_MIX)
        alpha, beta = float(ctx.rng.uniform(0.2, 3.0)), float(ctx.rng.uniform(-0.5, 2.0))
        report = j_variational(P1, P2, alpha, beta, config=ctx.solver)
        _report_checks(tally, report, ctx.config.tol, OPTIMIZER_TOL)
    return tally


@register("variational.j_functional_additive", "J of product distributions adds up over coordinates")
def _variational_j_additive(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.instances):
        k = ctx.size(2, 4)
        P1, P2 = random_distribution(ctx.rng, k, zeros=True), random_distribution(ctx.rng, k, UNIFORM_MIX)
        alpha, beta = float(ctx.rng.uniform(0.2, 3.0)), float(ctx.rng.uniform(-0.5, 2.0))
        pair1 = make_distribution(np.outer(P1.probs, P1.probs).ravel())
        pair2 = make_distribution(np.outer(P2.probs, P2.probs).ravel())
        single = j_functional(P1, P2, alpha, beta)
        tally.close(j_functional(pair1, pair2, alpha, beta), 2 * single, 1e-9)
    return tally


# ---------------------------------------------------------------------------
# Method of types
# ---------------------------------------------------------------------------


@register("types.sequence_probability", "P^n(x^n) = 2^{-n (D(Q||P) + H(Q))} for x^n of type Q")
def _types_sequence(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.instances):
        k = ctx.size(2, 3)
        P = random_distribution(ctx.rng, k, zeros=True)
        n = int(ctx.rng.integers(1, 41))
        t = EmpiricalType.of(ctx.rng.multinomial(n, random_distribution(ctx.rng, k).probs))
        tally.holds(exponent_matches_product(P, t), str(t.counts))
    return tally


@register("types.class_size_bounds", "(n+1)^{-|X|} 2^{n H(Q)} <= |T_Q| <= 2^{n H(Q)}")
def _types_class_size(ctx: CheckContext) -> Tally:
    tally = Tally()
    for k in (2, 3):
        for n in range(1, 41):
            for t in enumerate_types(n, k):
                tally.holds(type_size_bounds_hold(t), f"{t.counts}")
    return tally


@register("types.type_count", "|P^n(X)| = C(n+|X|-1, |X|-1) and the classes partition X^n")
def _types_count(ctx: CheckContext) -> Tally:
    tally = Tally()
    for k in (2, 3):
        for n in range(1, 41):
            types = enumerate_types(n, k)
            tally.holds(len(types) == type_count(n, k), f"n={n} k={k}")
            tally.holds(sum(type_class_size(t) for t in types) == k**n, f"n={n} k={k}")
            tally.holds(type_count(n, k) <= (n + 1) ** k, f"n={n} k={k}")
    return tally


@register("types.deviation_bound", "P^n{D(pi||P) >= delta} <= |P^n(X)| 2^{-n delta}")
def _types_deviation(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.exhaustive_instances):
        k = ctx.size(2, 3)
        P = random_distribution(ctx.rng, k, zeros=True)
        n = int(ctx.rng.integers(1, 31))
        delta = float(ctx.rng.uniform(0.0, 1.0))
        check = deviation_bound_check(P, n, delta)
        tally.at_most(check.exact_tail, check.bound, 1e-12)
    return tally


# ---------------------------------------------------------------------------
# Composite hypothesis testing
# ---------------------------------------------------------------------------


@register("hyptest.lower_bound", "The Renyi bound never exceeds the achievable exponent")
def _hyptest_lower_bound(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.exhaustive_instances):
        scenario = random_scenario(ctx.rng)
        tally.at_most(renyi_lower_bound(scenario), achievable_exponent(scenario), 1e-12)
    return tally


def _with_noise(scenario: Scenario, family) -> Scenario:
    return Scenario(scenario.family_p1, scenario.family_p2, tuple(family), scenario.lam, scenario.n1)


@register("hyptest.equality_with_worst_noise", "Equality when Q contains the worst-noise distributions")
def _hyptest_equality(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.exhaustive_instances):
        base = random_scenario(ctx.rng)
        scenario = _with_noise(base, worst_noise_family(base))
        report = equality_report(scenario)
        tally.record(abs(report.gap), 1e-9, "gap")
        tally.holds(report.in_closure and report.consistent, "closure")
    return tally


@register("hyptest.strict_gap_away_from_worst_noise", "Noise far from the worst-noise family leaves a gap")
def _hyptest_gap(ctx: CheckContext) -> Tally:
    tally = Tally()
    made = 0
    while made < ctx.config.exhaustive_instances:
        base = random_scenario(ctx.rng)
        scenario = _with_noise(base, [random_distribution(ctx.rng, base.alphabet_size)])
        report = equality_report(scenario)
        if report.distance < 0.1:
            continue
        made += 1
        tally.at_least(report.gap, 1e-4, 0.0)
        tally.holds(report.consistent and not report.in_closure)
    return tally


@register("exponent_alpha.non_increasing", "E(a) is non-increasing over the order grid")
def _exponent_monotone(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.exhaustive_instances):
        curve = [value for _, value in exponent_curve(random_scenario(ctx.rng))]
        for lower, higher in zip(curve, curve[1:]):
            tally.at_most(higher, lower, ctx.config.slack)
    return tally


@register("exponent_alpha.endpoint", "E(1/(1+lambda)) equals the Renyi lower bound")
def _exponent_endpoint(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.exhaustive_instances):
        scenario = random_scenario(ctx.rng)
        endpoint = alpha_grid(scenario)[-1]
        tally.close(exponent_alpha(scenario, endpoint), renyi_lower_bound(scenario), 1e-12)
    return tally


@register("exponent_alpha.small_order", "E(a) approaches the achievable exponent as a -> 0")
def _exponent_small(ctx: CheckContext) -> Tally:
    tally = Tally()
    for _ in range(ctx.config.exhaustive_instances):
        scenario = random_scenario(ctx.rng)
        achievable = achievable_exponent(scenario)
        if math.isinf(achievable):
            continue
        value = exponent_alpha(scenario, 1e-3)
        tally.at_most(value, achievable, ctx.config.slack, "below")
        tally.at_most(achievable - value, 0.05, 0.0, "distance")
    return tally


@register("hyptest.false_alarm_bound", "Exact false alarm of the modified rule obeys its binomial bound")
def _hyptest_false_alarm(ctx: CheckContext) -> Tally:
    tally = Tally()
    rule = DecisionRule(RuleKind.MODIFIED)
    for n1 in BLOCK_LENGTHS:
        scenario = symmetric_binary_scenario(n1)
        tally.at_most(exact_errors(scenario, rule).worst_p_fa, false_alarm_bound(scenario), 0.0, f"n1={n1}")
    return tally


@register("hyptest.achievability_envelope", "Exact miss-detection exponent stays above the finite-n envelope")
def _hyptest_envelope(ctx: CheckContext) -> Tally:
    tally = Tally()
    rule = DecisionRule(RuleKind.MODIFIED)
    for n1 in BLOCK_LENGTHS:
        scenario = symmetric_binary_scenario(n1)
        report = exact_errors(scenario, rule)
        for pair, p_md in report.p_md.items():
            exponent = math.inf if p_md <= 0 else -math.log2(p_md) / scenario.n
            tally.at_least(exponent, achievability_envelope(scenario, rule, pair), 1e-12, f"n1={n1}")
    return tally


@register("hyptest.disjoint_support_rule", "Disjointly supported families are never missed")
def _hyptest_disjoint(ctx: CheckContext) -> Tally:
    tally = Tally()
    rule = DecisionRule(RuleKind.DISJOINT_SUPPORT)
    for _ in range(ctx.config.solver_instances):
        k = ctx.size(2, 4)
        split = int(ctx.rng.integers(1, k))
        p1 = np.zeros(k)
        p2 = np.zeros(k)
        p1[:split] = ctx.rng.dirichlet(np.ones(split))
        p2[split:] = ctx.rng.dirichlet(np.ones(k - split))
        scenario = Scenario(
            (make_distribution(p1),),
            (make_distribution(p2),),
            (random_distribution(ctx.rng, k, UNIFORM_MIX),),
            float(ctx.rng.choice((0.5, 1.0, 2.0))),
            int(ctx.rng.integers(2, 7)),
        )
        tally.holds(exact_errors(scenario, rule).worst_p_md == 0.0)
    return tally


@register("hyptest.monte_carlo_agreement", "Monte Carlo estimates agree with exact probabilities")
def _hyptest_monte_carlo(ctx: CheckContext) -> Tally:
    tally = Tally()
    trials = ctx.config.trials
    scenario = symmetric_binary_scenario(8)
    for kind in RuleKind:
        rule = DecisionRule(kind)
        exact = exact_errors(scenario, rule)
        estimate = monte_carlo_errors(scenario, rule, trials, ctx.config.seed)
        pairs = list(zip(exact.p_md.values(), estimate.p_md.values()))
        pairs += list(zip(exact.p_fa.values(), estimate.p_fa.values()))
        for p, p_hat in pairs:
            sigma = math.sqrt(p * (1.0 - p) / trials)
            tally.record(abs(p - p_hat), 4 * sigma + 1.0 / trials, kind.value)
    return tally


# ---------------------------------------------------------------------------
# Runner
# ---------------------------------------------------------------------------


def select(only: Optional[Iterable[str]] = None) -> List[PropertyCheck]:
    """Registered checks whose names start with one of the prefixes (all when None)."""
    checks = list(REGISTRY.values())
    if not only:
        return checks
    prefixes = tuple(only)
    return [check for check in checks if check.name.startswith(prefixes)]


def run_check(check: PropertyCheck, config: VerifyConfig) -> PropertyResult:
    """Run one property on its own generator; library errors count as a failure."""
    rng = property_rng(config.seed, check.name)
    solver = DEFAULT_SOLVER_CONFIG.model_copy(update={"seed": zlib.crc32(check.name.encode()) ^ config.seed})
    try:
        tally = check.run(CheckContext(config, rng, solver))
    except RenyiLabError as exc:
        failure = f"{type(exc).__name__}: {exc}"
        return PropertyResult(check.name, check.group, False, 0, math.nan, failure, check.reference)
    worst = tally.worst if tally.checked else 0.0
    passed = tally.checked > 0 and tally.failures == 0
    detail = tally.first_failure if tally.failures else check.description
    return PropertyResult(check.name, check.group, passed, tally.checked, worst, detail, check.reference)


def run_suite(
    config: Optional[VerifyConfig] = None,
    on_result: Optional[Callable[[PropertyResult], None]] = None,
) -> List[PropertyResult]:
    """Run every selected property in registration order.

    Args:
        config: Instance counts, tolerances and seed
        on_result: Called after each property, e.g. to advance a progress bar

    Returns:
        One PropertyResult per property
    """
    config = config or VerifyConfig()
    results: List[PropertyResult] = []
    for check in select(config.only):
        result = run_check(check, config)
        results.append(result)
        if on_result is not None:
            on_result(result)
    return results
