"""Parametric convex gauge functions and their generalized inverses.

A gauge function here is a convex phi: [0, inf) -> [0, inf] with
phi(0) = 0, phi(s) -> inf as s -> inf and phi(s) < inf for some s > 0.
Four closed-form families are supported so that evaluation, inversion
and the step-function modular stay exact up to float rounding:

    power           phi(s) = s**p                      (p >= 1)
    exp_minus_one   phi(s) = exp(s) - 1
    shifted_linear  phi(s) = c * max(0, s - a)          (a >= 0, c > 0)
    capped_power    phi(s) = s**p if s <= b else inf    (p >= 1, b > 0)

The degeneracy parameters are

    a_phi = inf{u > 0 : phi(u) > 0}     (where phi leaves zero)
    b_phi = sup{u > 0 : phi(u) < inf}   (where phi jumps to inf)

and every family is left-continuous at b_phi.  The inverse used
throughout is the right generalized inverse

    phi_inverse(y) = sup{s >= 0 : phi(s) <= y},

extended by the limit convention phi_inverse(inf) = b_phi.  With this
convention the characteristic-function norm identity
1 / phi_inverse(1 / H(mu(A))) holds for all four families, including the
flat-start (a_phi > 0) and capped (b_phi < inf) ones, which the ordinary
pointwise inverse does not cover.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, ValidationError
from .extreal import INF, ext_div, ext_value

FAMILIES = ("power", "exp_minus_one", "shifted_linear", "capped_power")


def _pow(s: float, p: float) -> float:
    """s**p saturating to inf on float overflow."""
    try:
        return s**p
    except OverflowError:
        return INF


@dataclass(frozen=True)
class OrliczFunction:
    """One member of the four closed-form gauge families.

    Unused parameters stay at 0.0; use the factory classmethods rather
    than the raw constructor.
    """

    family: str
    p: float = 0.0
    a: float = 0.0
    c: float = 0.0
    b: float = 0.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValidationError(f"unknown gauge family {self.family!r}; allowed: {FAMILIES}")
        for field in ("p", "a", "c", "b"):
            v = getattr(self, field)
            object.__setattr__(self, field, float(v))
            if math.isnan(float(v)) or math.isinf(float(v)):
                raise ValidationError(f"parameter {field} must be finite, got {v}")
        if self.family in ("power", "capped_power") and self.p < 1.0:
            raise ValidationError(f"not convex: exponent p must be >= 1, got {self.p}")
        if self.family == "shifted_linear":
            if self.a < 0.0:
                raise ValidationError(f"shift a must be >= 0, got {self.a}")
            if self.c <= 0.0:
                raise ValidationError(f"slope c must be > 0, got {self.c}")
        if self.family == "capped_power" and self.b <= 0.0:
            raise ValidationError(f"cap b must be > 0, got {self.b}")

    @classmethod
    def power(cls, p: float) -> "OrliczFunction":
        return cls("power", p=p)

    @classmethod
    def exp_minus_one(cls) -> "OrliczFunction":
        return cls("exp_minus_one")

    @classmethod
    def shifted_linear(cls, a: float, c: float) -> "OrliczFunction":
        return cls("shifted_linear", a=a, c=c)

    @classmethod
    def capped_power(cls, p: float, b: float) -> "OrliczFunction":
        return cls("capped_power", p=p, b=b)


def phi_eval(phi: OrliczFunction, s: float) -> float:
    """Evaluate phi(s); may return inf.

    Accepts s = inf (returns inf, the limit value).  Negative s is a
    domain error.
    """
    s = float(s)
    if math.isnan(s) or s < 0.0:
        raise DomainError(f"phi is defined on [0, inf); got s={s}")
    if math.isinf(s):
        return INF
    if phi.family == "power":
        return _pow(s, phi.p)
    if phi.family == "exp_minus_one":
        try:
            return math.expm1(s)
        except OverflowError:
            return INF
    if phi.family == "shifted_linear":
        return phi.c * max(0.0, s - phi.a)
    # capped_power
    if s > phi.b:
        return INF
    return _pow(s, phi.p)


def phi_inverse(phi: OrliczFunction, y: float) -> float:
    """Right generalized inverse sup{s >= 0 : phi(s) <= y}.

    Total on [0, inf]; phi_inverse(inf) = b_phi by the limit convention.
    """
    y = ext_value(y, "y")
    if math.isinf(y):
        return phi_params(phi)[1]
    if phi.family == "power":
        return _pow(y, 1.0 / phi.p)
    if phi.family == "exp_minus_one":
        return math.log1p(y)
    if phi.family == "shifted_linear":
        return phi.a + y / phi.c
    # capped_power: phi(b) = b**p is attained, so the sup sticks at b
    cap = _pow(phi.b, phi.p)
    if y >= cap:
        return phi.b
    return _pow(y, 1.0 / phi.p)


def phi_params(phi: OrliczFunction) -> tuple[float, float]:
    """Return (a_phi, b_phi) in closed form."""
    if phi.family == "shifted_linear":
        return (phi.a, INF)
    if phi.family == "capped_power":
        return (0.0, phi.b)
    return (0.0, INF)


@dataclass(frozen=True)
class Delta2Report:
    """Result of probing phi(2s) <= M * phi(s) on a finite grid.

    ``max_ratio`` is the largest observed phi(2s)/phi(s) over grid points
    with 0 < phi(s) < inf; ``satisfied_on_grid`` holds iff that maximum is
    finite, and ``constant_M`` equals it.  Grid points where phi vanishes
    or is already infinite cannot witness the inequality and are recorded
    in ``skipped_zero`` / ``skipped_infinite``.

    A finite grid can only refute, never certify: a doubling-condition
    verdict from this probe is evidence at the sampled scales, nothing
    more.
    """

    satisfied_on_grid: bool
    constant_M: float
    s0: float
    grid: tuple[float, ...]
    max_ratio: float
    skipped_zero: tuple[float, ...] = ()
    skipped_infinite: tuple[float, ...] = ()


def delta2_probe(
    phi: OrliczFunction,
    s0: float = 1.0,
    s_max: float = 4096.0,
    n_samples: int = 49,
) -> Delta2Report:
    """Sample phi(2s)/phi(s) on a geometric grid over [s0, s_max].

    Requires 0 < s0 < s_max and n_samples >= 2.  Float overflow inside
    phi saturates to inf, so a family whose doubling ratio genuinely
    diverges (e.g. exp_minus_one) shows an infinite max_ratio once the
    grid is wide enough.
    """
    s0 = float(s0)
    s_max = float(s_max)
    if not (0.0 < s0 < s_max):
        raise DomainError(f"need 0 < s0 < s_max, got s0={s0}, s_max={s_max}")
    if n_samples < 2:
        raise DomainError(f"need n_samples >= 2, got {n_samples}")

    step = (s_max / s0) ** (1.0 / (n_samples - 1))
    grid = tuple(s0 * step**i for i in range(n_samples))

    max_ratio = 0.0
    skipped_zero: list[float] = []
    skipped_inf: list[float] = []
    for s in grid:
        fs = phi_eval(phi, s)
        if fs == 0.0:
            skipped_zero.append(s)
            continue
        if math.isinf(fs):
            skipped_inf.append(s)
            continue
        ratio = ext_div(phi_eval(phi, 2.0 * s), fs)
        if ratio > max_ratio:
            max_ratio = ratio

    return Delta2Report(
        satisfied_on_grid=not math.isinf(max_ratio),
        constant_M=max_ratio,
        s0=s0,
        grid=grid,
        max_ratio=max_ratio,
        skipped_zero=tuple(skipped_zero),
        skipped_infinite=tuple(skipped_inf),
    )
