"""Orbit traces and three-valued expansivity classification.

The composition operator acts on characteristic functions by

    C^n chi_A = chi_{tau^-n(A)},

so for a normalized test vector g_A = chi_A / ||chi_A|| the orbit norms
are exactly the criterion ratios

    ||C^n g_A|| = c_0(A) / c_n(A),      c_n(A) = phi_inverse(1 / H(mu(tau^-n(A)))).

Two independent routes compute these traces: the criterion route uses
the closed-form c_n directly, while the oracle route runs the norm
bisection on the composed characteristic functions.  Both feed the same
decision rules, which is what makes their agreement a meaningful
cross-check.

Finite horizons cannot decide "inf over Z equals 0" or "limit equals
inf", so verdicts are three-valued:

    Holds         every test set met the growth/smallness threshold;
    Fails         some test set has a provable obstruction: a trace
                  whose monotone extrapolation beyond the horizon stays
                  bounded (constant, or rising to a peak and falling);
    Inconclusive  neither, or the orbit left the window, or a required
                  doubling-condition hypothesis failed its probe.

Fails always carries a witness (set, n, value); Inconclusive always
carries a note.  The smallness threshold epsilon acts on the normalized
trace c_n/c_0 (equivalently: the ratio c_0/c_n must exceed 1/epsilon),
which keeps verdicts invariant under a global rescaling of the measure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .errors import AdmissibilityError, DomainError, OutOfWindowError
from .extreal import INF, ext_div
from .measure import (
    AtomSet,
    CompositionSystem,
    OutOfWindow,
    preimage_set,
    set_measure,
    validate_system,
)
from .orlicz import delta2_probe, phi_inverse
from .rearrangement import SimpleFunction, luxemburg_norm
from .weights import h_cumulative

HOLDS = "Holds"
FAILS = "Fails"
INCONCLUSIVE = "Inconclusive"

NOTIONS = ("expansive", "positive", "uniform_positive", "uniform")

# Probe grid for the doubling condition gating the uniform notions.
_DELTA2_S0 = 1.0
_DELTA2_S_MAX = 4096.0
_DELTA2_SAMPLES = 49

# Relative slack for monotone shape tests, so norm-bisection noise in the
# oracle traces cannot flip a shape verdict.
_SHAPE_SLACK = 1e-9


@dataclass(frozen=True)
class TestFamily:
    """Finite surrogate for the quantifier "for every set of finite positive measure".

    ``epsilon`` is the smallness threshold on the normalized criterion
    trace c_n/c_0 and ``ratio_R`` the growth threshold on ratio traces;
    the defaults mirror each other (1/epsilon = ratio_R).
    """

    # not a test case, despite the name pytest sees when imported
    __test__ = False

    sets: tuple[AtomSet, ...]
    horizon_N: int = 20
    epsilon: float = 1e-4
    ratio_R: float = 1e4

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(sorted(set(self.sets))))
        if not self.sets:
            raise DomainError("test family needs at least one set")
        if any(s.is_empty for s in self.sets):
            raise DomainError("test sets must be nonempty")
        if self.horizon_N < 1:
            raise DomainError(f"horizon must be >= 1, got {self.horizon_N}")
        if not (self.epsilon > 0.0 and self.ratio_R > 0.0):
            raise DomainError("thresholds must be positive")


def default_test_family(
    set_lo: int = -8,
    set_hi: int = 8,
    block_lengths: Sequence[int] = (2, 4, 8),
    horizon_N: int = 20,
    epsilon: float = 1e-4,
    ratio_R: float = 1e4,
    random_unions: int = 0,
    union_size: int = 4,
    seed: int = 0,
) -> TestFamily:
    """All singletons in [set_lo, set_hi], aligned blocks of the given
    lengths, and optionally seeded random unions."""
    sets = [AtomSet.of((k,)) for k in range(set_lo, set_hi + 1)]
    for length in block_lengths:
        start = (set_lo // length) * length
        if start < set_lo:
            start += length
        while start + length - 1 <= set_hi:
            sets.append(AtomSet.of(range(start, start + length)))
            start += length
    if random_unions > 0:
        rng = np.random.default_rng(seed)
        pool = np.arange(set_lo, set_hi + 1)
        size = min(union_size, len(pool))
        for _ in range(random_unions):
            sets.append(AtomSet.of(int(k) for k in rng.choice(pool, size=size, replace=False)))
    return TestFamily(
        sets=tuple(sets),
        horizon_N=horizon_N,
        epsilon=epsilon,
        ratio_R=ratio_R,
    )


@dataclass(frozen=True)
class Witness:
    set: AtomSet
    n: int
    value: float


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: Witness | None = None
    notes: tuple[str, ...] = ()
    bipartition: tuple[tuple[AtomSet, ...], tuple[AtomSet, ...]] | None = None

    def __post_init__(self):
        if self.status not in (HOLDS, FAILS, INCONCLUSIVE):
            raise DomainError(f"unknown verdict status {self.status!r}")
        if self.status == FAILS and self.witness is None:
            raise DomainError("a failing verdict must carry a witness")
        if self.status == INCONCLUSIVE and not self.notes:
            raise DomainError("an inconclusive verdict must carry a note")


@dataclass(frozen=True)
class CriterionTrace:
    """c_n = phi_inverse(1/H(mu(tau^-n(A)))) over a range of n.

    ``out_of_window`` lists the n whose iterate left the window (no
    entry); ``empty_preimage`` lists the n where the iterate had measure
    zero, for which c_n takes the b_phi limit value.
    """

    set: AtomSet
    entries: tuple[tuple[int, float], ...]
    out_of_window: tuple[int, ...] = ()
    empty_preimage: tuple[int, ...] = ()

    def value_at(self, n: int) -> float | None:
        for m, c in self.entries:
            if m == n:
                return c
        return None


@dataclass(frozen=True)
class OrbitTrace:
    entries: tuple[tuple[int, float], ...]
    out_of_window: tuple[int, ...] = ()


def compose_iterate(system: CompositionSystem, g: SimpleFunction, n: int) -> SimpleFunction:
    """The n-th composition iterate g o tau^n.

    Values transport onto the preimage indices; for g = chi_A the result
    is exactly chi_{tau^-n(A)}.  Raises OutOfWindowError when the orbit
    leaves the window.
    """
    points = []
    for k, v in g.points:
        if v == 0.0:
            continue
        j = system.tau.preimage_index(k, n)
        if not system.space.in_window(j):
            raise OutOfWindowError(
                f"orbit truncated: iterate {n} maps support atom {k} to {j}, "
                f"outside window {system.space.window}",
                n=n,
                index=j,
            )
        points.append((j, v))
    return SimpleFunction(tuple(points))


def orbit_norms(
    system: CompositionSystem, g: SimpleFunction, n_range: tuple[int, int]
) -> OrbitTrace:
    """Luxemburg norms of the composition orbit of g over n in [lo, hi].

    Out-of-window iterates are omitted from the entries and reported.
    The zero vector is rejected: orbit-norm criteria quantify over
    nonzero vectors only.
    """
    if g.is_zero:
        raise DomainError("orbit norms are defined for nonzero functions only")
    lo, hi = n_range
    entries = []
    missing = []
    for n in range(lo, hi + 1):
        try:
            gn = compose_iterate(system, g, n)
        except OutOfWindowError:
            missing.append(n)
            continue
        entries.append((n, luxemburg_norm(system, gn)))
    return OrbitTrace(entries=tuple(entries), out_of_window=tuple(missing))


def criterion_sequence(
    system: CompositionSystem, A: AtomSet, n_range: tuple[int, int]
) -> CriterionTrace:
    """The criterion quantities c_n = phi_inverse(1/H(mu(tau^-n(A))))."""
    if set_measure(system.space, A) == 0.0:
        raise DomainError("criterion sequence needs a set of positive measure")
    lo, hi = n_range
    entries = []
    missing = []
    empty = []
    for n in range(lo, hi + 1):
        pre = preimage_set(system, A, n)
        if isinstance(pre, OutOfWindow):
            missing.append(n)
            continue
        m = set_measure(system.space, pre)
        if m == 0.0:
            empty.append(n)
            c = phi_inverse(system.phi, INF)
        else:
            c = phi_inverse(system.phi, ext_div(1.0, h_cumulative(system.weight, m)))
        entries.append((n, c))
    return CriterionTrace(
        set=A,
        entries=tuple(entries),
        out_of_window=tuple(missing),
        empty_preimage=tuple(empty),
    )


# ---------------------------------------------------------------------------
# Trace shape tests (shared by criterion classifiers and the oracle)
# ---------------------------------------------------------------------------


def _non_decreasing(vals: Sequence[float], slack: float = _SHAPE_SLACK) -> bool:
    return all(b >= a * (1.0 - slack) for a, b in zip(vals, vals[1:]))


def _non_increasing(vals: Sequence[float], slack: float = _SHAPE_SLACK) -> bool:
    return all(b <= a * (1.0 + slack) for a, b in zip(vals, vals[1:]))


def _provably_bounded(vals: Sequence[float], two_sided: bool) -> bool:
    """Whether monotone extrapolation beyond the horizon bounds the trace.

    Requires a rise-then-fall shape (constants and plateaus qualify) and
    additionally that no extrapolated tail is still strictly rising: a
    trace whose maximum sits at the right edge while climbing, or, in
    the two-sided case, at the left edge while climbing outward, may
    keep growing beyond the horizon and proves nothing.
    """
    if len(vals) < 2:
        return False
    i_max = max(range(len(vals)), key=lambda i: vals[i])
    if not (_non_decreasing(vals[: i_max + 1]) and _non_increasing(vals[i_max:])):
        return False
    if vals[-1] > vals[-2] * (1.0 + _SHAPE_SLACK):
        return False
    if two_sided and vals[0] > vals[1] * (1.0 + _SHAPE_SLACK):
        return False
    return True


def _capped(vals: Sequence[float]) -> bool:
    """True when some index n0 before the end dominates the whole tail.

    Equivalent to the maximum being (first) attained strictly before the
    final entry; a trace still rising at the horizon is not capped.
    """
    if len(vals) < 2:
        return False
    vmax = max(vals)
    first_at_max = next(
        i for i, v in enumerate(vals) if v >= vmax * (1.0 - _SHAPE_SLACK)
    )
    return first_at_max < len(vals) - 1


def _growth_ok(vals: Sequence[float], ratio_R: float) -> bool:
    """Threshold met at the horizon and non-decreasing over the last half."""
    if not vals:
        return False
    half = vals[len(vals) // 2 :]
    return vals[-1] >= ratio_R and _non_decreasing(half)


# ---------------------------------------------------------------------------
# Decision engine
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _SetTrace:
    """Ratio traces for one test set, in orbit form.

    ``forward`` holds the trace of ||C^n g_A|| surrogates for n = 0..N
    (equivalently c_0/c_n, the backward set-iterate ratio); ``backward``
    holds ||C^-n g_A|| for n = 0..N (the forward set-iterate ratio).
    ``gaps`` lists n whose iterate left the window, signed as requested.
    """

    set: AtomSet
    forward: tuple[float, ...]
    backward: tuple[float, ...]
    gaps: tuple[int, ...]
    notes: tuple[str, ...] = ()


def _criterion_set_trace(system: CompositionSystem, A: AtomSet, N: int, two_sided: bool) -> _SetTrace:
    lo = -N if two_sided else 0
    trace = criterion_sequence(system, A, (lo, N))
    c0 = trace.value_at(0)
    if c0 is None:
        return _SetTrace(A, (), (), gaps=trace.out_of_window)
    forward = []
    backward = []
    for n in range(0, N + 1):
        c = trace.value_at(n)
        if c is None:
            break
        forward.append(ext_div(c0, c))
    if two_sided:
        for n in range(0, N + 1):
            c = trace.value_at(-n)
            if c is None:
                break
            backward.append(ext_div(c0, c))
    notes = ()
    if trace.empty_preimage:
        notes = (f"iterates of {A.indices} with empty preimage at n={list(trace.empty_preimage)}",)
    return _SetTrace(
        A,
        forward=tuple(forward),
        backward=tuple(backward),
        gaps=trace.out_of_window,
        notes=notes,
    )


@lru_cache(maxsize=1 << 18)
def _char_norm_bisect(system: CompositionSystem, indices: tuple[int, ...]) -> float:
    if not indices:
        return 0.0
    return luxemburg_norm(system, SimpleFunction.characteristic(indices))


def _oracle_set_trace(system: CompositionSystem, A: AtomSet, N: int, two_sided: bool) -> _SetTrace:
    base = _char_norm_bisect(system, A.indices)
    gaps: list[int] = []

    def half_trace(sign: int) -> tuple[float, ...]:
        vals = []
        for n in range(0, N + 1):
            pre = preimage_set(system, A, sign * n)
            if isinstance(pre, OutOfWindow):
                gaps.append(sign * n)
                break
            vals.append(_char_norm_bisect(system, pre.indices) / base)
        return tuple(vals)

    forward = half_trace(+1)
    backward = half_trace(-1) if two_sided else ()
    return _SetTrace(A, forward=forward, backward=backward, gaps=tuple(gaps))


def _decide(
    traces: Sequence[_SetTrace],
    notion: str,
    attained: Callable[[float], bool],
    ratio_R: float,
) -> Verdict:
    """Apply the per-set rules for one notion and aggregate.

    A set passes when its trace meets the threshold; it provably fails
    when the trace shape admits a bounded monotone extrapolation; else
    it is undecided.  One provably failing set decides the whole family.
    """
    two_sided = notion in ("expansive", "uniform")
    failing: list[Witness] = []
    undecided: list[str] = []
    notes: list[str] = []
    b_class: list[AtomSet] = []
    c_class: list[AtomSet] = []

    for tr in traces:
        notes.extend(tr.notes)
        if notion in ("expansive", "positive"):
            # ordered by n: [-N..N] when two-sided, [0..N] otherwise
            vals = tuple(reversed(tr.backward[1:])) + tr.forward if two_sided else tr.forward
            if any(attained(v) for v in vals):
                continue
            if tr.gaps:
                undecided.append(
                    f"set {tr.set.indices}: orbit left window at n={list(tr.gaps)}"
                )
            elif _provably_bounded(vals, two_sided):
                i = max(range(len(vals)), key=lambda j: vals[j])
                n_at = (i - len(tr.backward) + 1) if two_sided else i
                failing.append(Witness(tr.set, n_at, vals[i]))
            else:
                undecided.append(
                    f"set {tr.set.indices}: threshold not attained and no provable bound"
                )
        elif notion == "uniform_positive":
            vals = tr.forward
            if tr.gaps or len(vals) < 2:
                undecided.append(f"set {tr.set.indices}: orbit left window at n={list(tr.gaps)}")
            elif _growth_ok(vals, ratio_R):
                continue
            elif _capped(vals):
                vmax = max(vals)
                n0 = next(i for i, v in enumerate(vals) if v >= vmax * (1.0 - _SHAPE_SLACK))
                failing.append(Witness(tr.set, n0, vals[n0]))
            else:
                undecided.append(
                    f"set {tr.set.indices}: growth threshold not met and ratios not capped"
                )
        else:  # uniform (two-sided)
            fwd_set_ratio = tr.backward  # mu(tau^n(A)) direction
            bwd_set_ratio = tr.forward  # mu(tau^-n(A)) direction
            if tr.gaps or len(fwd_set_ratio) < 2 or len(bwd_set_ratio) < 2:
                undecided.append(f"set {tr.set.indices}: orbit left window at n={list(tr.gaps)}")
            elif _growth_ok(fwd_set_ratio, ratio_R):
                b_class.append(tr.set)
            elif _growth_ok(bwd_set_ratio, ratio_R):
                c_class.append(tr.set)
            elif _capped(fwd_set_ratio) and _capped(bwd_set_ratio):
                vmax = max(bwd_set_ratio)
                n0 = next(
                    i for i, v in enumerate(bwd_set_ratio) if v >= vmax * (1.0 - _SHAPE_SLACK)
                )
                failing.append(Witness(tr.set, n0, bwd_set_ratio[n0]))
                notes.append(
                    f"set {tr.set.indices}: both direction ratios are capped inside the horizon"
                )
            else:
                undecided.append(
                    f"set {tr.set.indices}: neither direction meets the growth test "
                    "and no provable bound"
                )

    if failing:
        return Verdict(FAILS, witness=failing[0], notes=tuple(notes))
    if undecided:
        return Verdict(INCONCLUSIVE, notes=tuple(notes) + tuple(undecided[:8]))
    bipartition = (tuple(b_class), tuple(c_class)) if notion == "uniform" else None
    return Verdict(HOLDS, notes=tuple(notes), bipartition=bipartition)


def _delta2_gate(system: CompositionSystem, verdict: Verdict) -> Verdict:
    """Downgrade Holds to Inconclusive when the doubling probe refutes.

    The uniform criteria are equivalences only under the doubling
    hypothesis; a Holds without it is evidence, not a theorem instance.
    Fails survives: a bounded trace refutes expansivity regardless.
    """
    if verdict.status != HOLDS:
        return verdict
    probe = delta2_probe(system.phi, _DELTA2_S0, _DELTA2_S_MAX, _DELTA2_SAMPLES)
    if probe.satisfied_on_grid:
        return verdict
    return Verdict(
        INCONCLUSIVE,
        notes=verdict.notes
        + (
            "doubling condition unverified: probe ratio diverges on "
            f"[{_DELTA2_S0}, {_DELTA2_S_MAX}]",
        ),
        bipartition=verdict.bipartition,
    )


def _require_admissible(system: CompositionSystem, notion: str) -> None:
    report = validate_system(system)
    if not report.valid:
        raise AdmissibilityError(
            f"system failed validation: {[msg for msg, _ in report.failures]}"
        )
    if notion not in report.admissible_notions:
        raise AdmissibilityError(
            f"notion {notion!r} needs an invertible operator with bounded inverse; "
            f"admissible notions: {report.admissible_notions}"
        )


def _classify(system: CompositionSystem, fam: TestFamily, notion: str) -> Verdict:
    _require_admissible(system, notion)
    two_sided = notion in ("expansive", "uniform")
    traces = [
        _criterion_set_trace(system, A, fam.horizon_N, two_sided) for A in fam.sets
    ]
    threshold = ext_div(1.0, fam.epsilon)
    verdict = _decide(traces, notion, attained=lambda v: v > threshold, ratio_R=fam.ratio_R)
    if notion in ("uniform_positive", "uniform"):
        verdict = _delta2_gate(system, verdict)
    return verdict


def classify_expansive(system: CompositionSystem, fam: TestFamily) -> Verdict:
    """Two-sided criterion: inf over n in Z of c_n(A) vanishes for every A."""
    return _classify(system, fam, "expansive")


def classify_positively_expansive(system: CompositionSystem, fam: TestFamily) -> Verdict:
    """Forward criterion: inf over n in N of c_n(A) vanishes for every A."""
    return _classify(system, fam, "positive")


def classify_uniformly_positively_expansive(system: CompositionSystem, fam: TestFamily) -> Verdict:
    """Uniform forward criterion: the ratio c_0/c_n grows without bound,
    tested at the horizon simultaneously for all sets; gated by the
    doubling-condition probe."""
    return _classify(system, fam, "uniform_positive")


def classify_uniformly_expansive(system: CompositionSystem, fam: TestFamily) -> Verdict:
    """Two-sided uniform criterion with a two-class decomposition.

    Each set is assigned greedily to the forward-iterate class (growth of
    the mu(tau^n(A)) ratio) or the backward-iterate class; the criterion
    holds when every set lands in at least one class, and the returned
    bipartition certifies the decomposition.
    """
    return _classify(system, fam, "uniform")


_CLASSIFIERS = {
    "expansive": classify_expansive,
    "positive": classify_positively_expansive,
    "uniform_positive": classify_uniformly_positively_expansive,
    "uniform": classify_uniformly_expansive,
}


def classify(system: CompositionSystem, fam: TestFamily, notion: str) -> Verdict:
    if notion not in _CLASSIFIERS:
        raise DomainError(f"unknown notion {notion!r}; allowed: {NOTIONS}")
    return _CLASSIFIERS[notion](system, fam)


def oracle_classify(
    system: CompositionSystem,
    fam: TestFamily,
    notion: str,
    extended: int = 0,
    seed: int = 0,
) -> Verdict:
    """Direct orbit-norm surrogate of the operator-level definitions.

    For each test set the normalized vector g_A = chi_A / ||chi_A|| lies
    on the unit sphere, and the trace ||C^n g_A|| is computed through the
    norm bisection, no closed-form criterion quantities.  The same
    decision rules as the criterion classifiers then apply, with the
    growth threshold ratio_R.  ``extended`` adds that many seeded random
    normalized simple functions as extra unit-sphere samples.

    No doubling-condition gate applies here: the orbit-norm definitions
    stand on their own.
    """
    if notion not in _CLASSIFIERS:
        raise DomainError(f"unknown notion {notion!r}; allowed: {NOTIONS}")
    _require_admissible(system, notion)
    two_sided = notion in ("expansive", "uniform")
    traces = [_oracle_set_trace(system, A, fam.horizon_N, two_sided) for A in fam.sets]
    if extended > 0:
        traces.extend(
            _extended_vector_traces(system, fam, extended, seed, two_sided)
        )
    return _decide(
        traces, notion, attained=lambda v: v >= fam.ratio_R, ratio_R=fam.ratio_R
    )


def _extended_vector_traces(
    system: CompositionSystem,
    fam: TestFamily,
    count: int,
    seed: int,
    two_sided: bool,
) -> list[_SetTrace]:
    rng = np.random.default_rng(seed)
    pool = sorted({k for A in fam.sets for k in A})
    out = []
    for _ in range(count):
        size = int(rng.integers(1, min(4, len(pool)) + 1))
        support = [int(k) for k in rng.choice(pool, size=size, replace=False)]
        values = rng.uniform(0.5, 2.0, size=size) * rng.choice([-1.0, 1.0], size=size)
        g = SimpleFunction.of(zip(support, (float(v) for v in values)))
        g = g.scaled(1.0 / luxemburg_norm(system, g))

        def half(sign: int) -> tuple[tuple[float, ...], tuple[int, ...]]:
            vals: list[float] = []
            gaps: list[int] = []
            for n in range(0, fam.horizon_N + 1):
                try:
                    gn = compose_iterate(system, g, sign * n)
                except OutOfWindowError:
                    gaps.append(sign * n)
                    break
                vals.append(luxemburg_norm(system, gn))
            return tuple(vals), tuple(gaps)

        fwd, gaps_f = half(+1)
        bwd, gaps_b = half(-1) if two_sided else ((), ())
        out.append(
            _SetTrace(
                g.support(),
                forward=fwd,
                backward=bwd,
                gaps=gaps_f + gaps_b,
                notes=(f"extended unit-sphere vector on support {g.support().indices}",),
            )
        )
    return out
