"""Atomic measure spaces, injective transformations, and their interplay.

A space is a family of atoms indexed by the integers inside a finite
window [lo, hi].  Masses come from closed-form rules (geometric,
bilateral geometric, counting) or an explicit table, so every measure
reported here is exact for the rule given.  Closed-form rules describe a
sigma-finite space over all of Z; the window is only the computational
horizon, and any orbit step that leaves it is signalled explicitly
(an ``OutOfWindow`` marker or :class:`~oll.errors.OutOfWindowError`)
rather than silently truncated.

Transformations are injective with explicit inverses: integer shifts
(bijections of Z) and table bijections (permutations of the window).
The composition operator g -> g o tau is bounded when

    mu(tau^-1(A)) <= M * mu(A)   for every measurable A,

and :func:`distortion_bound` computes the least such M on the windowed
space (atom masses are additive, so the singleton supremum suffices).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError, OutOfWindowError, ValidationError
from .extreal import INF
from .orlicz import OrliczFunction
from .weights import WeightFunction, with_domain

MASS_FAMILIES = ("geometric", "bilateral_geometric", "counting", "table")
TAU_FAMILIES = ("shift", "table")


@dataclass(frozen=True)
class AtomicSpace:
    window: tuple[int, int]
    mass_family: str
    r: float = 1.0
    table: tuple[tuple[int, float], ...] = ()

    def __post_init__(self):
        lo, hi = self.window
        if lo > hi:
            raise ValidationError(f"window [{lo}, {hi}] is empty")
        object.__setattr__(self, "window", (int(lo), int(hi)))
        if self.mass_family not in MASS_FAMILIES:
            raise ValidationError(
                f"unknown mass family {self.mass_family!r}; allowed: {MASS_FAMILIES}"
            )
        if self.mass_family in ("geometric", "bilateral_geometric"):
            object.__setattr__(self, "r", float(self.r))
            if not (self.r > 0.0) or math.isinf(self.r):
                raise ValidationError(f"mass ratio r must be positive and finite, got {self.r}")
        if self.mass_family == "table":
            entries = tuple(sorted((int(k), float(m)) for k, m in self.table))
            object.__setattr__(self, "table", entries)
            keys = [k for k, _ in entries]
            if len(set(keys)) != len(keys):
                raise ValidationError("table defines some atom twice")
            if keys != list(range(lo, hi + 1)):
                raise ValidationError("table must define a mass for every index in the window")
            for k, m in entries:
                if not (m > 0.0) or math.isinf(m):
                    raise ValidationError(f"atom mass must be positive and finite, got m({k})={m}")

    @classmethod
    def geometric(cls, r: float, window: tuple[int, int]) -> "AtomicSpace":
        return cls(window, "geometric", r=r)

    @classmethod
    def bilateral_geometric(cls, r: float, window: tuple[int, int]) -> "AtomicSpace":
        return cls(window, "bilateral_geometric", r=r)

    @classmethod
    def counting(cls, window: tuple[int, int]) -> "AtomicSpace":
        return cls(window, "counting")

    @classmethod
    def from_table(cls, masses: dict[int, float], window: tuple[int, int] | None = None) -> "AtomicSpace":
        if window is None:
            window = (min(masses), max(masses))
        return cls(window, "table", table=tuple(masses.items()))

    def in_window(self, k: int) -> bool:
        return self.window[0] <= k <= self.window[1]

    def mass(self, k: int) -> float:
        """Mass of atom k.

        Closed-form rules evaluate anywhere on Z (the underlying space
        extends beyond the window); table rules only know the window.
        """
        if self.mass_family == "counting":
            return 1.0
        if self.mass_family == "geometric":
            m = self.r**k
        elif self.mass_family == "bilateral_geometric":
            m = self.r ** abs(k)
        else:
            for key, mass in self.table:
                if key == k:
                    return mass
            raise DomainError(f"index {k} outside the table window {self.window}")
        if m == 0.0 or math.isinf(m):
            raise DomainError(f"mass rule under/overflows at index {k}")
        return m

    @property
    def total_measure(self) -> float:
        """Measure of the full underlying space (not just the window)."""
        if self.mass_family == "table":
            return sum(m for _, m in self.table)
        if self.mass_family == "bilateral_geometric" and self.r < 1.0:
            return (1.0 + self.r) / (1.0 - self.r)
        # geometric and counting rules over Z always diverge
        return INF


@dataclass(frozen=True, order=True)
class AtomSet:
    """A finite set of atom indices; nonempty sets have finite positive measure."""

    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(sorted(int(k) for k in self.indices))
        if len(set(idx)) != len(idx):
            raise ValidationError(f"duplicate indices in atom set {self.indices}")
        object.__setattr__(self, "indices", idx)

    @classmethod
    def of(cls, indices: Iterable[int]) -> "AtomSet":
        return cls(tuple(indices))

    def __iter__(self):
        return iter(self.indices)

    def __len__(self):
        return len(self.indices)

    @property
    def is_empty(self) -> bool:
        return not self.indices


@dataclass(frozen=True)
class OutOfWindow:
    """Marker: an iterate of a set left the index window at step n."""

    n: int
    index: int


@dataclass(frozen=True)
class Transformation:
    """Injective self-map of the atom indices with an explicit inverse."""

    family: str
    d: int = 0
    forward: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.family not in TAU_FAMILIES:
            raise ValidationError(
                f"unknown transformation family {self.family!r}; allowed: {TAU_FAMILIES}"
            )
        if self.family == "shift":
            object.__setattr__(self, "d", int(self.d))
        else:
            entries = tuple(sorted((int(k), int(v)) for k, v in self.forward))
            object.__setattr__(self, "forward", entries)
            keys = [k for k, _ in entries]
            values = [v for _, v in entries]
            if len(set(values)) != len(values):
                raise ValidationError("table map is not injective")
            if set(keys) != set(values):
                raise ValidationError("table map is not a bijection of its domain")

    @classmethod
    def shift(cls, d: int) -> "Transformation":
        return cls("shift", d=d)

    @classmethod
    def table_bijection(cls, mapping: dict[int, int]) -> "Transformation":
        return cls("table", forward=tuple(mapping.items()))

    def _table_forward(self, k: int) -> int:
        for key, v in self.forward:
            if key == k:
                return v
        raise DomainError(f"index {k} outside the bijection domain")

    def _table_inverse(self, k: int) -> int:
        for key, v in self.forward:
            if v == k:
                return key
        raise DomainError(f"index {k} outside the bijection range")

    def apply(self, k: int, n: int = 1) -> int:
        """tau^n(k); negative n applies the inverse."""
        if self.family == "shift":
            return k + n * self.d
        steps, move = (n, self._table_forward) if n >= 0 else (-n, self._table_inverse)
        for _ in range(steps):
            k = move(k)
        return k

    def preimage_index(self, k: int, n: int = 1) -> int:
        """The unique j with tau^n(j) = k."""
        return self.apply(k, -n)


@dataclass(frozen=True)
class CompositionSystem:
    """Space + transformation + gauge + weight + distortion constant.

    The weight is rebound at construction so its domain upper end equals
    the total measure of the space.
    """

    space: AtomicSpace
    tau: Transformation
    phi: OrliczFunction
    weight: WeightFunction
    distortion_M: float

    def __post_init__(self):
        object.__setattr__(self, "distortion_M", float(self.distortion_M))
        if not (self.distortion_M > 0.0):
            raise ValidationError(f"distortion bound M must be > 0, got {self.distortion_M}")
        object.__setattr__(self, "weight", with_domain(self.weight, self.space.total_measure))
        if self.tau.family == "table":
            lo, hi = self.space.window
            keys = {k for k, _ in self.tau.forward}
            if keys != set(range(lo, hi + 1)):
                raise ValidationError("bijection domain must equal the space window")


def set_measure(space: AtomicSpace, A: AtomSet) -> float:
    """mu(A) as an ascending-index sum of atom masses."""
    total = 0.0
    for k in A:
        if not space.in_window(k):
            raise DomainError(f"index {k} outside window {space.window}")
        total += space.mass(k)
    return total


def preimage_set(system: CompositionSystem, A: AtomSet, n: int) -> AtomSet | OutOfWindow:
    """tau^-n(A) = {k : tau^n(k) in A}; negative n gives forward images.

    Returns an :class:`OutOfWindow` marker as soon as any resulting index
    leaves the window.
    """
    out = []
    for a in A:
        if not system.space.in_window(a):
            raise DomainError(f"index {a} outside window {system.space.window}")
        k = system.tau.preimage_index(a, n)
        if not system.space.in_window(k):
            return OutOfWindow(n=n, index=k)
        out.append(k)
    return AtomSet.of(out)


def distortion_bound(system: CompositionSystem) -> float:
    """Least M with mu(tau^-1(A)) <= M * mu(A) on the windowed space.

    Computed as sup over window atoms k of m(tau^-1(k)) / m(k); the ratio
    is 0 when the preimage has no mass in the space (table rule outside
    its window).
    """
    space = system.space
    lo, hi = space.window
    best = 0.0
    for k in range(lo, hi + 1):
        j = system.tau.preimage_index(k, 1)
        try:
            mj = space.mass(j)
        except DomainError:
            continue
        ratio = mj / space.mass(k)
        if ratio > best:
            best = ratio
    return best


def _inverse_distortion_bound(system: CompositionSystem) -> float:
    """Least M' with mu(tau(A)) <= M' * mu(A) on the windowed space."""
    space = system.space
    lo, hi = space.window
    best = 0.0
    for k in range(lo, hi + 1):
        j = system.tau.apply(k, 1)
        try:
            mj = space.mass(j)
        except DomainError:
            continue
        ratio = mj / space.mass(k)
        if ratio > best:
            best = ratio
    return best


@dataclass(frozen=True)
class SystemReport:
    valid: bool
    failures: tuple[tuple[str, int | None], ...]
    forward_bound: float
    inverse_bound: float
    two_sided_admissible: bool
    admissible_notions: tuple[str, ...]


def validate_system(system: CompositionSystem, rel_slack: float = 1e-12) -> SystemReport:
    """Check the structural conditions of a composition dynamical system.

    Verifies positive finite masses, injectivity with a consistent
    inverse, and the stored distortion constant against the computed
    bound (a failure carries the witness atom).  The report also states
    which expansivity notions are admissible: the two-sided ones need an
    invertible operator whose inverse is bounded as well.
    """
    space = system.space
    lo, hi = space.window
    failures: list[tuple[str, int | None]] = []

    for k in range(lo, hi + 1):
        try:
            m = space.mass(k)
        except DomainError:
            failures.append((f"mass undefined at atom {k}", k))
            continue
        if not (m > 0.0) or math.isinf(m):
            failures.append((f"mass not positive and finite at atom {k}: {m}", k))

    for k in range(lo, hi + 1):
        try:
            if system.tau.preimage_index(system.tau.apply(k, 1), 1) != k:
                failures.append((f"inverse rule disagrees with forward rule at atom {k}", k))
                break
        except DomainError:
            continue

    fwd = distortion_bound(system)
    if fwd > system.distortion_M * (1.0 + rel_slack):
        witness = None
        for k in range(lo, hi + 1):
            j = system.tau.preimage_index(k, 1)
            try:
                mj = space.mass(j)
            except DomainError:
                continue
            if mj / space.mass(k) > system.distortion_M * (1.0 + rel_slack):
                witness = k
                break
        failures.append(
            (
                f"stored distortion bound M={system.distortion_M} below computed bound "
                f"{fwd} (witness atom {witness})",
                witness,
            )
        )

    inv = _inverse_distortion_bound(system)
    two_sided = not failures and math.isfinite(inv) and inv > 0.0

    valid = not failures
    notions: tuple[str, ...] = ()
    if valid:
        notions = ("positive", "uniform_positive")
        if two_sided:
            notions = ("expansive", "positive", "uniform_positive", "uniform")
    return SystemReport(
        valid=valid,
        failures=tuple(failures),
        forward_bound=fwd,
        inverse_bound=inv,
        two_sided_admissible=two_sided,
        admissible_notions=notions,
    )


def is_wandering(system: CompositionSystem, wset: AtomSet, n_range: tuple[int, int]) -> bool:
    """True iff the iterates tau^-n(wset), n in [n_lo, n_hi], are pairwise disjoint.

    Raises :class:`OutOfWindowError` when an iterate leaves the window,
    since disjointness over the requested range is then undecidable here.
    """
    n_lo, n_hi = n_range
    iterates: list[set[int]] = []
    for n in range(n_lo, n_hi + 1):
        pre = preimage_set(system, wset, n)
        if isinstance(pre, OutOfWindow):
            raise OutOfWindowError(
                f"iterate {pre.n} left the window at index {pre.index}; "
                "wandering test inconclusive",
                n=pre.n,
                index=pre.index,
            )
        iterates.append(set(pre.indices))
    union: set[int] = set()
    total = 0
    for s in iterates:
        union |= s
        total += len(s)
    return len(union) == total
