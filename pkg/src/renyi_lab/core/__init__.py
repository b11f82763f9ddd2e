"""Domain types, extended reals, errors and input schemas."""

from .errors import (
    AlphabetMismatch,
    AlphaOutOfRange,
    DegenerateSplit,
    DegenerateTilting,
    DenominatorMismatch,
    IndeterminateForm,
    InfiniteValue,
    InvalidInput,
    InvalidOrder,
    KraftViolation,
    KraftWarning,
    NegativeWeight,
    NonConvergence,
    RenyiLabError,
    ShapeMismatch,
    TooLarge,
    WeightMismatch,
    ZeroMass,
)
from .extended import INF, ExtendedReal, ext_add, ext_scale, is_finite
from .io import (
    ChannelModel,
    DistributionModel,
    load_channel,
    load_distribution,
    parse_model,
    read_json_file,
)
from .types import (
    Channel,
    Distribution,
    JointDistribution,
    Order,
    OrderLike,
    OrderTag,
    Optimum,
    absolutely_continuous,
    check_channel_input,
    check_same_alphabet,
    compose,
    finite_alpha,
    joint,
    make_channel,
    make_distribution,
    max_norm_distance,
    output_distribution,
    product,
    support,
    uniform,
)

__all__ = [
    "AlphabetMismatch",
    "AlphaOutOfRange",
    "DegenerateSplit",
    "DegenerateTilting",
    "DenominatorMismatch",
    "IndeterminateForm",
    "InfiniteValue",
    "InvalidInput",
    "InvalidOrder",
    "KraftViolation",
    "KraftWarning",
    "NegativeWeight",
    "NonConvergence",
    "RenyiLabError",
    "ShapeMismatch",
    "TooLarge",
    "WeightMismatch",
    "ZeroMass",
    "INF",
    "ExtendedReal",
    "ext_add",
    "ext_scale",
    "is_finite",
    "ChannelModel",
    "DistributionModel",
    "load_channel",
    "load_distribution",
    "parse_model",
    "read_json_file",
    "Channel",
    "Distribution",
    "JointDistribution",
    "Order",
    "OrderLike",
    "OrderTag",
    "Optimum",
    "absolutely_continuous",
    "check_channel_input",
    "check_same_alphabet",
    "compose",
    "finite_alpha",
    "joint",
    "make_channel",
    "make_distribution",
    "max_norm_distance",
    "output_distribution",
    "product",
    "support",
    "uniform",
]
