"""Distribution functions, decreasing rearrangements, modular and norm.

For a finitely supported g on an atomic space the distribution function

    mu_g(lam) = mu{x : |g(x)| > lam}

is a finite sum of atom masses, and the non-increasing rearrangement

    g*(t) = inf{lam > 0 : mu_g(lam) <= t}

is the right-continuous step function obtained by sorting the distinct
absolute values in descending order and stacking the masses that attain
them.  Both routines accumulate masses in the same canonical atom order
(descending |value|, then index), so the equimeasurability identity

    Leb{t : g*(t) > lam} = mu_g(lam)

holds bitwise, not just up to rounding.

The modular of g at scale lam is the exact step sum

    I(g/lam) = sum_i phi(v_i / lam) * (H(t_i) - H(t_{i-1})),

with H the closed-form cumulative weight, and the norm is the Luxemburg
functional inf{lam > 0 : I(g/lam) <= 1}, located by bracketing plus
bisection; lam -> I(g/lam) is non-increasing, and since phi is
left-continuous the feasible set is a closed ray, so the infimum is
attained and the returned value satisfies I(g/norm) <= 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import DomainError, NumericError, ValidationError
from .extreal import INF, ext_add, ext_div, ext_mul
from .measure import AtomicSpace, AtomSet, CompositionSystem, set_measure
from .orlicz import phi_eval, phi_inverse
from .weights import h_cumulative


@dataclass(frozen=True)
class SimpleFunction:
    """A finitely supported function stored as (index, value) pairs.

    Indices are distinct and kept sorted.  Values may be signed (all
    computations see |g| only); complex values are reduced to their
    moduli at ingestion.  Stored zeros are allowed and semantically
    removable.
    """

    points: tuple[tuple[int, float], ...]

    def __post_init__(self):
        pts = []
        for k, v in self.points:
            if isinstance(v, complex):
                v = abs(v)
            v = float(v)
            if math.isnan(v) or math.isinf(v):
                raise ValidationError(f"value at index {k} must be finite, got {v}")
            pts.append((int(k), v))
        pts.sort()
        indices = [k for k, _ in pts]
        if len(set(indices)) != len(indices):
            raise ValidationError("duplicate indices in simple function")
        object.__setattr__(self, "points", tuple(pts))

    @classmethod
    def of(cls, data: Mapping[int, float] | Iterable[tuple[int, float]]) -> "SimpleFunction":
        if isinstance(data, Mapping):
            return cls(tuple(data.items()))
        return cls(tuple(data))

    @classmethod
    def characteristic(cls, A: AtomSet | Iterable[int], value: float = 1.0) -> "SimpleFunction":
        indices = A.indices if isinstance(A, AtomSet) else tuple(A)
        return cls(tuple((k, value) for k in indices))

    @classmethod
    def zero(cls) -> "SimpleFunction":
        return cls(())

    @property
    def is_zero(self) -> bool:
        return all(v == 0.0 for _, v in self.points)

    def support(self) -> AtomSet:
        return AtomSet.of(k for k, v in self.points if v != 0.0)

    def value_at(self, k: int) -> float:
        for key, v in self.points:
            if key == k:
                return v
        return 0.0

    def scaled(self, c: float) -> "SimpleFunction":
        if isinstance(c, complex):
            c = abs(c)
        return SimpleFunction(tuple((k, c * v) for k, v in self.points))

    def plus(self, other: "SimpleFunction") -> "SimpleFunction":
        acc = {k: v for k, v in self.points}
        for k, v in other.points:
            acc[k] = acc.get(k, 0.0) + v
        return SimpleFunction.of(acc)


@dataclass(frozen=True)
class StepFunction:
    """A right-continuous, non-increasing step function on [0, inf).

    ``breakpoints`` are the cumulative interval ends 0 < t_1 < ... < t_k
    and ``values`` the strictly decreasing positive levels v_1 > ... > v_k;
    the function equals v_i on [t_{i-1}, t_i) (t_0 = 0) and 0 beyond t_k.
    """

    breakpoints: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.breakpoints) != len(self.values):
            raise ValidationError("breakpoints and values must have equal length")
        prev_t = 0.0
        for t in self.breakpoints:
            if not t > prev_t:
                raise ValidationError("breakpoints must be strictly increasing from 0")
            prev_t = t
        prev_v = INF
        for v in self.values:
            if not (0.0 < v < prev_v):
                raise ValidationError("values must be strictly decreasing and positive")
            prev_v = v

    @property
    def n_steps(self) -> int:
        return len(self.values)

    @property
    def support_measure(self) -> float:
        return self.breakpoints[-1] if self.breakpoints else 0.0

    def eval(self, t: float) -> float:
        if t < 0.0:
            raise DomainError(f"step function is defined on [0, inf); got t={t}")
        for tb, v in zip(self.breakpoints, self.values):
            if t < tb:
                return v
        return 0.0


def _canonical_order(g: SimpleFunction) -> list[tuple[float, int]]:
    """Support atoms as (|value|, index), descending in |value| then index."""
    pts = [(abs(v), k) for k, v in g.points if v != 0.0]
    pts.sort(key=lambda p: (-p[0], p[1]))
    return pts


def distribution(space: AtomicSpace, g: SimpleFunction, lam: float) -> float:
    """mu_g(lam) = total mass of atoms where |g| > lam.

    Masses accumulate in the canonical order used by
    :func:`rearrangement`, so the result coincides bitwise with the
    matching rearrangement breakpoint.
    """
    lam = float(lam)
    if lam < 0.0 or math.isnan(lam):
        raise DomainError(f"distribution function needs lam >= 0, got {lam}")
    total = 0.0
    for av, k in _canonical_order(g):
        if av <= lam:
            break
        total += space.mass(k)
    return total


def rearrangement(space: AtomicSpace, g: SimpleFunction) -> StepFunction:
    """Non-increasing rearrangement of |g| as a step function.

    Atoms attaining the same |value| merge into one step with their
    masses added; the zero function gives the empty step function.
    """
    breakpoints: list[float] = []
    values: list[float] = []
    cum = 0.0
    for av, k in _canonical_order(g):
        cum += space.mass(k)
        if values and values[-1] == av:
            breakpoints[-1] = cum
        else:
            values.append(av)
            breakpoints.append(cum)
    return StepFunction(tuple(breakpoints), tuple(values))


def _modular_of_steps(system: CompositionSystem, steps: StepFunction, lam: float) -> float:
    total = 0.0
    prev_h = 0.0
    for t, v in zip(steps.breakpoints, steps.values):
        h_t = h_cumulative(system.weight, t)
        term = ext_mul(phi_eval(system.phi, v / lam), h_t - prev_h)
        total = ext_add(total, term)
        if math.isinf(total):
            return INF
        prev_h = h_t
    return total


def modular(system: CompositionSystem, g: SimpleFunction, lam: float) -> float:
    """The modular I(g/lam) = sum_i phi(v_i/lam) (H(t_i) - H(t_{i-1})).

    Exact on the step representation of g*; inf propagates through the
    extended-real conventions.
    """
    lam = float(lam)
    if not lam > 0.0:
        raise DomainError(f"modular scale lam must be > 0, got {lam}")
    return _modular_of_steps(system, rearrangement(system.space, g), lam)


@dataclass(frozen=True)
class NormResult:
    value: float
    iterations: int
    bracket: tuple[float, float]
    residual: float
    modular_at_value: float


_REL_TOL = 1e-12
_MAX_ITER = 200


def luxemburg_norm_info(system: CompositionSystem, g: SimpleFunction) -> NormResult:
    """Luxemburg norm with bisection diagnostics.

    Bracketing: the upper end starts at max|v| * (1 + 1/phi_inverse(
    1/H(support measure))), a certified upper bound, since |g| is
    dominated by max|v| times the characteristic function of its support
   , and doubles while infeasible; the lower end halves from 1 until the
    modular exceeds 1 (underflow of the lower end means the norm is 0).
    Bisection then narrows the bracket to relative width 1e-12, keeping
    the returned value on the feasible side: I(g/value) <= 1.
    """
    steps = rearrangement(system.space, g)
    if steps.n_steps == 0:
        return NormResult(0.0, 0, (0.0, 0.0), 0.0, 0.0)

    max_v = steps.values[0]
    support_measure = steps.support_measure
    inv = phi_inverse(system.phi, ext_div(1.0, h_cumulative(system.weight, support_measure)))
    hi = max_v * (1.0 + ext_div(1.0, inv))
    if not (0.0 < hi < INF):
        hi = max_v

    guard = 0
    while _modular_of_steps(system, steps, hi) > 1.0:
        hi *= 2.0
        guard += 1
        if guard > _MAX_ITER:
            raise NumericError("could not bracket the norm from above", bracket=(0.0, hi))

    lo = 1.0
    while _modular_of_steps(system, steps, lo) <= 1.0:
        lo *= 0.5
        if lo < 1e-300:
            return NormResult(0.0, 0, (0.0, lo), lo, 0.0)
    if lo >= hi:
        lo = hi * 0.5

    iterations = 0
    for _ in range(_MAX_ITER):
        if hi - lo <= _REL_TOL * hi:
            break
        mid = 0.5 * (lo + hi)
        iterations += 1
        if _modular_of_steps(system, steps, mid) <= 1.0:
            hi = mid
        else:
            lo = mid
    else:
        raise NumericError(
            f"norm bisection did not converge in {_MAX_ITER} iterations",
            bracket=(lo, hi),
        )
    return NormResult(
        value=hi,
        iterations=iterations,
        bracket=(lo, hi),
        residual=hi - lo,
        modular_at_value=_modular_of_steps(system, steps, hi),
    )


def luxemburg_norm(system: CompositionSystem, g: SimpleFunction) -> float:
    """inf{lam > 0 : I(g/lam) <= 1}; 0 for the zero function."""
    return luxemburg_norm_info(system, g).value


def char_norm_formula(system: CompositionSystem, A: AtomSet) -> float:
    """Closed-form norm of a characteristic function:

        1 / phi_inverse(1 / H(mu(A)))

    valid for A of finite positive measure.
    """
    m = set_measure(system.space, A)
    if m == 0.0:
        raise DomainError("characteristic norm needs 0 < mu(A) < inf; got mu(A) = 0")
    y = ext_div(1.0, h_cumulative(system.weight, m))
    return ext_div(1.0, phi_inverse(system.phi, y))
