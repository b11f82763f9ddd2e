"""Domain types: distributions, channels, joint tables and orders."""

import math
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Iterable, NamedTuple, Optional, Sequence, Union

import numpy as np

from .errors import (
    AlphabetMismatch,
    InvalidInput,
    InvalidOrder,
    NegativeWeight,
    ShapeMismatch,
    ZeroMass,
)

# Tolerance on the total mass of a constructed distribution
MASS_TOLERANCE = 1e-12


def _frozen_array(values, ndim: int) -> np.ndarray:
    array = np.array(values, dtype=float)
    if array.ndim != ndim or array.size == 0:
        raise ShapeMismatch(f"expected a non-empty {ndim}-d array, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise InvalidInput("weights must be finite")
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Distribution:
    """Probability vector over the alphabet {0, ..., alphabet_size - 1}."""

    probs: np.ndarray

    def __post_init__(self):
        probs = _frozen_array(self.probs, ndim=1)
        if np.any(probs < 0):
            raise NegativeWeight("probabilities must be non-negative")
        if abs(probs.sum() - 1.0) > MASS_TOLERANCE:
            raise InvalidInput(
                f"probabilities sum to {probs.sum()!r}; use make_distribution to normalize"
            )
        object.__setattr__(self, "probs", probs)

    @property
    def alphabet_size(self) -> int:
        return int(self.probs.size)

    def __len__(self) -> int:
        return self.alphabet_size

    def __getitem__(self, x: int) -> float:
        return float(self.probs[x])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Distribution):
            return NotImplemented
        return bool(np.array_equal(self.probs, other.probs))

    def __hash__(self) -> int:
        return hash(self.probs.tobytes())

    def support_mask(self) -> np.ndarray:
        return self.probs > 0

    def tolist(self) -> list:
        return [float(p) for p in self.probs]

    def __repr__(self) -> str:
        return f"Distribution({self.tolist()})"


@dataclass(frozen=True, eq=False)
class Channel:
    """Row-stochastic matrix W(y|x); row x is the output law for input x."""

    rows: np.ndarray

    def __post_init__(self):
        rows = _frozen_array(self.rows, ndim=2)
        if np.any(rows < 0):
            raise NegativeWeight("channel entries must be non-negative")
        sums = rows.sum(axis=1)
        if np.any(np.abs(sums - 1.0) > MASS_TOLERANCE):
            raise InvalidInput("every channel row must sum to 1; use make_channel to normalize")
        object.__setattr__(self, "rows", rows)

    @property
    def input_size(self) -> int:
        return int(self.rows.shape[0])

    @property
    def output_size(self) -> int:
        return int(self.rows.shape[1])

    def row(self, x: int) -> Distribution:
        return Distribution(self.rows[x])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Channel):
            return NotImplemented
        return bool(np.array_equal(self.rows, other.rows))

    def __hash__(self) -> int:
        return hash(self.rows.tobytes())

    def tolist(self) -> list:
        return [[float(w) for w in row] for row in self.rows]


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """Probability table over X x Y."""

    table: np.ndarray

    def __post_init__(self):
        table = _frozen_array(self.table, ndim=2)
        if np.any(table < 0):
            raise NegativeWeight("joint probabilities must be non-negative")
        if abs(table.sum() - 1.0) > MASS_TOLERANCE:
            raise InvalidInput(f"joint table sums to {table.sum()!r}")
        object.__setattr__(self, "table", table)

    def flatten(self) -> Distribution:
        return Distribution(self.table.reshape(-1))


class Optimum(NamedTuple):
    """Optimal value together with the point that attains it."""

    value: float
    point: Union["Distribution", "Channel"]


class OrderTag(str, Enum):
    """Kinds of Renyi order."""

    ZERO = "zero"
    ONE = "one"
    INFINITY = "infinity"
    FINITE = "finite"


@dataclass(frozen=True)
class Order:
    """Renyi order: a finite alpha > 0 (alpha != 1) or one of the limits 0, 1, inf."""

    tag: OrderTag
    value: Optional[float] = None

    def __post_init__(self):
        if self.tag is OrderTag.FINITE:
            if self.value is None or not math.isfinite(self.value):
                raise InvalidOrder("finite order needs a finite value")
            if self.value <= 0 or self.value == 1:
                raise InvalidOrder(f"finite order must be > 0 and != 1, got {self.value}")
        elif self.value is not None:
            raise InvalidOrder(f"{self.tag.value} order carries no value")

    @classmethod
    def finite(cls, alpha: float) -> "Order":
        return cls(OrderTag.FINITE, float(alpha))

    @classmethod
    def zero(cls) -> "Order":
        return cls(OrderTag.ZERO)

    @classmethod
    def one(cls) -> "Order":
        return cls(OrderTag.ONE)

    @classmethod
    def infinity(cls) -> "Order":
        return cls(OrderTag.INFINITY)

    @classmethod
    def of(cls, value: Union["Order", float, int, str]) -> "Order":
        """Coerce a number, a JSON string or an Order into an Order."""
        if isinstance(value, Order):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        alpha = float(value)
        if math.isnan(alpha) or alpha < 0:
            raise InvalidOrder(f"order must be >= 0, got {value}")
        if alpha == 0:
            return cls.zero()
        if alpha == 1:
            return cls.one()
        if math.isinf(alpha):
            return cls.infinity()
        return cls.finite(alpha)

    @classmethod
    def parse(cls, text: str) -> "Order":
        token = text.strip().lower()
        if token in ("inf", "infinity", "+inf"):
            return cls.infinity()
        try:
            return cls.of(float(token))
        except ValueError as exc:
            raise InvalidOrder(f"cannot parse order {text!r}") from exc

    @property
    def alpha(self) -> float:
        """Numeric value of the order, with the limits mapped to 0, 1 and inf."""
        if self.tag is OrderTag.ZERO:
            return 0.0
        if self.tag is OrderTag.ONE:
            return 1.0
        if self.tag is OrderTag.INFINITY:
            return math.inf
        return float(self.value)

    @property
    def is_finite(self) -> bool:
        return self.tag is OrderTag.FINITE

    def require_finite(self, module: str = "core") -> float:
        if not self.is_finite:
            raise InvalidOrder(f"a finite order is required, got {self.to_json()!r}", module)
        return float(self.value)

    def to_json(self) -> Union[str, float]:
        if self.tag is OrderTag.ZERO:
            return "0"
        if self.tag is OrderTag.ONE:
            return "1"
        if self.tag is OrderTag.INFINITY:
            return "inf"
        return float(self.value)


OrderLike = Union[Order, float, int, str]


def finite_alpha(a: OrderLike, module: str = "core") -> float:
    """Return alpha for a finite order, rejecting the limit orders."""
    return Order.of(a).require_finite(module)


def make_distribution(weights: Iterable[float]) -> Distribution:
    """Normalize non-negative weights into a Distribution.

    Args:
        weights: Non-negative weights, at least one positive

    Returns:
        Distribution proportional to the weights
    """
    w = np.array(list(weights) if not isinstance(weights, np.ndarray) else weights, dtype=float)
    if w.ndim != 1 or w.size == 0:
        raise ShapeMismatch("weights must be a non-empty vector")
    if np.any(w < 0):
        raise NegativeWeight("weights must be non-negative")
    total = w.sum()
    if total <= 0:
        raise ZeroMass("at least one weight must be positive")
    return Distribution(w / total)


def make_channel(rows: Sequence[Sequence[float]]) -> Channel:
    """Build a Channel by normalizing every row."""
    matrix = np.array(rows, dtype=float)
    if matrix.ndim != 2 or matrix.size == 0:
        raise ShapeMismatch("channel rows must form a non-empty matrix")
    return Channel(np.vstack([make_distribution(row).probs for row in matrix]))


def uniform(alphabet_size: int) -> Distribution:
    if alphabet_size < 1:
        raise InvalidInput("alphabet size must be >= 1")
    return Distribution(np.full(alphabet_size, 1.0 / alphabet_size))


def support(P: Distribution) -> FrozenSet[int]:
    """Indices x with P(x) > 0 (exact comparison)."""
    return frozenset(int(x) for x in np.flatnonzero(P.probs > 0))


def check_same_alphabet(*dists: Distribution, module: str = "core") -> int:
    sizes = {d.alphabet_size for d in dists}
    if len(sizes) != 1:
        raise AlphabetMismatch(f"distributions have different alphabet sizes {sorted(sizes)}", module)
    return sizes.pop()


def absolutely_continuous(P1: Distribution, P2: Distribution) -> bool:
    """True iff S(P1) is contained in S(P2)."""
    check_same_alphabet(P1, P2)
    return bool(np.all(P2.probs[P1.probs > 0] > 0))


def check_channel_input(P: Distribution, W: Channel, module: str = "core") -> None:
    if P.alphabet_size != W.input_size:
        raise ShapeMismatch(
            f"distribution over {P.alphabet_size} symbols does not match channel input size "
            f"{W.input_size}",
            module,
        )


def output_distribution(P: Distribution, W: Channel) -> Distribution:
    """PW(y) = sum_x P(x) W(y|x)."""
    check_channel_input(P, W)
    return make_distribution(P.probs @ W.rows)


def joint(P: Distribution, W: Channel) -> JointDistribution:
    """(P o W)(x, y) = P(x) W(y|x)."""
    check_channel_input(P, W)
    table = P.probs[:, None] * W.rows
    return JointDistribution(table / table.sum())


def product(P: Distribution, Q: Distribution) -> JointDistribution:
    """(P x Q)(x, y) = P(x) Q(y)."""
    table = np.outer(P.probs, Q.probs)
    return JointDistribution(table / table.sum())


def compose(W1: Channel, W2: Channel) -> Channel:
    """Concatenation (W1 W2)(z|x) = sum_y W2(z|y) W1(y|x)."""
    if W1.output_size != W2.input_size:
        raise ShapeMismatch(
            f"cannot chain channel with {W1.output_size} outputs into one with "
            f"{W2.input_size} inputs"
        )
    return make_channel(W1.rows @ W2.rows)


def max_norm_distance(P1: Distribution, P2: Distribution) -> float:
    check_same_alphabet(P1, P2)
    return float(np.max(np.abs(P1.probs - P2.probs)))
