"""Total arithmetic on the nonnegative extended reals [0, inf].

Values are ordinary floats with ``math.inf`` as the top element; the
helpers below make division, multiplication and addition total so that
formulas like 1/H(mu(A)) never raise on boundary inputs.  Conventions:

    x / 0   = inf   for x > 0          0 / 0   = 0
    x / inf = 0     for finite x       inf / y = inf   for finite y
    0 * inf = 0                        x + inf = inf
    inf / inf = inf (unreachable in practice, kept for totality)

Comparison is the ordinary float order, which is total on [0, inf] with
inf as maximum.  NaN is rejected at the boundary by :func:`ext_value`.
"""

from __future__ import annotations

import math

from .errors import DomainError

INF = math.inf


def ext_value(x: float, name: str = "value") -> float:
    """Validate ``x`` as a member of [0, inf] and return it as a float.

    Rejects NaN and negative numbers, which have no place in the
    nonnegative extended reals.
    """
    x = float(x)
    if math.isnan(x):
        raise DomainError(f"{name} is NaN, not an extended real")
    if x < 0.0:
        raise DomainError(f"{name} must be >= 0, got {x}")
    return x


def ext_div(x: float, y: float) -> float:
    """x / y under the documented total conventions."""
    if y == 0.0:
        return 0.0 if x == 0.0 else INF
    if math.isinf(y):
        return INF if math.isinf(x) else 0.0
    if math.isinf(x):
        return INF
    return x / y


def ext_mul(x: float, y: float) -> float:
    """x * y with 0 * inf = 0."""
    if x == 0.0 or y == 0.0:
        return 0.0
    if math.isinf(x) or math.isinf(y):
        return INF
    return x * y


def ext_add(x: float, y: float) -> float:
    """x + y with x + inf = inf."""
    if math.isinf(x) or math.isinf(y):
        return INF
    return x + y


def is_finite(x: float) -> bool:
    return not math.isinf(x)
