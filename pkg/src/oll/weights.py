"""Non-increasing weight functions with exact cumulative integrals.

A weight is a positive, non-increasing, locally integrable function h on
K = [0, total measure of the space].  Two closed-form families keep the
cumulative integral H(t) = integral of h over [0, t] exact, which is what
makes the step-function modular and the norm bisection trustworthy at
tight tolerances:

    constant      h(t) = c            H(t) = c * t
    power_decay   h(t) = c * t**-alpha, 0 <= alpha < 1
                  H(t) = c * t**(1 - alpha) / (1 - alpha)

alpha >= 1 is rejected (h would not be locally integrable near 0) and
alpha < 0 is rejected (h would be increasing).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import DomainError, ValidationError
from .extreal import INF

WEIGHT_FAMILIES = ("constant", "power_decay")


@dataclass(frozen=True)
class WeightFunction:
    family: str
    c: float
    alpha: float = 0.0
    domain_upper: float = INF

    def __post_init__(self):
        if self.family not in WEIGHT_FAMILIES:
            raise ValidationError(
                f"unknown weight family {self.family!r}; allowed: {WEIGHT_FAMILIES}"
            )
        object.__setattr__(self, "c", float(self.c))
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "domain_upper", float(self.domain_upper))
        if math.isnan(self.c) or self.c <= 0.0:
            raise ValidationError(f"not positive: constant c must be > 0, got {self.c}")
        if self.family == "power_decay":
            if math.isnan(self.alpha) or self.alpha < 0.0:
                raise ValidationError(
                    f"not non-increasing: alpha must be >= 0, got {self.alpha}"
                )
            if self.alpha >= 1.0:
                raise ValidationError(
                    f"not locally integrable: alpha must be < 1, got {self.alpha}"
                )
        if self.domain_upper <= 0.0:
            raise ValidationError(f"domain upper end must be > 0, got {self.domain_upper}")

    @classmethod
    def constant(cls, c: float, domain_upper: float = INF) -> "WeightFunction":
        return cls("constant", c=c, domain_upper=domain_upper)

    @classmethod
    def power_decay(cls, c: float, alpha: float, domain_upper: float = INF) -> "WeightFunction":
        return cls("power_decay", c=c, alpha=alpha, domain_upper=domain_upper)


def with_domain(w: WeightFunction, upper: float) -> WeightFunction:
    """Rebind the weight to the interval [0, upper]."""
    return replace(w, domain_upper=float(upper))


def h_eval(w: WeightFunction, t: float) -> float:
    """h(t) for 0 < t <= domain_upper."""
    t = float(t)
    if not (0.0 < t <= w.domain_upper):
        raise DomainError(
            f"weight is defined on (0, {w.domain_upper}]; got t={t}"
        )
    if w.family == "constant":
        return w.c
    return w.c * t ** (-w.alpha)


def h_cumulative(w: WeightFunction, t: float) -> float:
    """H(t) = integral of h over [0, t], in closed form; H(0) = 0."""
    t = float(t)
    if t < 0.0 or t > w.domain_upper:
        raise DomainError(
            f"cumulative weight is defined on [0, {w.domain_upper}]; got t={t}"
        )
    if t == 0.0:
        return 0.0
    if w.family == "constant":
        return w.c * t
    return w.c * t ** (1.0 - w.alpha) / (1.0 - w.alpha)


@dataclass(frozen=True)
class WeightReport:
    valid: bool
    failures: tuple[str, ...]


def validate_weight(w: WeightFunction, n_grid: int = 64) -> WeightReport:
    """Re-check parameter ranges and sample monotone non-increase of h.

    Family constructors already reject invalid parameters at build time;
    this re-verifies a constructed instance on a geometric grid, which
    guards table-free closed forms against future family additions.
    """
    failures: list[str] = []
    if w.c <= 0.0:
        failures.append("not positive: c <= 0")
    if w.family == "power_decay":
        if w.alpha >= 1.0:
            failures.append("not locally integrable: alpha >= 1")
        if w.alpha < 0.0:
            failures.append("not non-increasing: alpha < 0")

    hi = w.domain_upper if math.isfinite(w.domain_upper) else 1e6
    lo = hi * 1e-9
    step = (hi / lo) ** (1.0 / (n_grid - 1))
    prev = None
    for i in range(n_grid):
        t = lo * step**i
        v = h_eval(w, t)
        if v <= 0.0:
            failures.append(f"not positive: h({t}) = {v}")
            break
        if prev is not None and v > prev * (1.0 + 1e-12):
            failures.append(f"not non-increasing: h increases at t={t}")
            break
        prev = v
    return WeightReport(valid=not failures, failures=tuple(failures))
