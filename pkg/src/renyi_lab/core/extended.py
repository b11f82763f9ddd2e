"""Extended-real helpers.

Extended reals are plain floats; ``math.inf`` is the only infinity that the
divergence operations produce.
"""

import math

from .errors import IndeterminateForm

ExtendedReal = float
INF = math.inf


def ext_scale(c: float, value: ExtendedReal) -> ExtendedReal:
    """Multiply an extended real by a finite scalar.

    0 * inf is 0, matching the 0 log(a/0) = 0 convention.
    """
    if math.isinf(value):
        if c > 0:
            return value
        if c == 0:
            return 0.0
        raise IndeterminateForm(f"negative scalar {c} times {value}")
    return c * value


def ext_add(*values: ExtendedReal) -> ExtendedReal:
    """Sum extended reals; +inf absorbs finite terms, +inf and -inf together is undefined."""
    if any(v == INF for v in values) and any(v == -INF for v in values):
        raise IndeterminateForm("inf - inf")
    return float(sum(values))


def is_finite(value: ExtendedReal) -> bool:
    return math.isfinite(value)
