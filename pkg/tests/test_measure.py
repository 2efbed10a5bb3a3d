import numpy as np
import pytest

from oll.errors import DomainError, OutOfWindowError, ValidationError
from oll.extreal import INF
from oll.measure import (
    AtomSet,
    AtomicSpace,
    CompositionSystem,
    OutOfWindow,
    Transformation,
    distortion_bound,
    is_wandering,
    preimage_set,
    set_measure,
    validate_system,
)
from oll.orlicz import OrliczFunction
from oll.weights import WeightFunction

W = (-64, 64)
PHI = OrliczFunction.power(1.0)
H1 = WeightFunction.constant(1.0)


def system(space, tau, M):
    return CompositionSystem(space, tau, PHI, H1, M)


GEOM_HALF = AtomicSpace.geometric(0.5, W)
COUNTING = AtomicSpace.counting(W)
BI_GROWTH = AtomicSpace.bilateral_geometric(2.0, W)
BI_DECAY = AtomicSpace.bilateral_geometric(0.5, W)

S1 = system(GEOM_HALF, Transformation.shift(1), 2.0)
IDENTITY = system(COUNTING, Transformation.shift(0), 1.0)
COUNT_SHIFT = system(COUNTING, Transformation.shift(1), 1.0)
GROWTH = system(BI_GROWTH, Transformation.shift(1), 2.0)
DECAY = system(BI_DECAY, Transformation.shift(1), 2.0)

CATALOG = [S1, IDENTITY, COUNT_SHIFT, GROWTH, DECAY]


class TestSetMeasure:
    def test_geometric_pair(self):
        assert set_measure(GEOM_HALF, AtomSet.of([1, 2])) == 0.75

    def test_counting(self):
        assert set_measure(COUNTING, AtomSet.of([-3, 0, 5])) == 3.0

    def test_empty(self):
        assert set_measure(GEOM_HALF, AtomSet.of([])) == 0.0

    def test_outside_window_rejected(self):
        with pytest.raises(DomainError):
            set_measure(GEOM_HALF, AtomSet.of([65]))

    def test_duplicates_rejected(self):
        with pytest.raises(ValidationError):
            AtomSet.of([1, 1])


class TestTotalMeasure:
    def test_closed_forms(self):
        assert GEOM_HALF.total_measure == INF
        assert COUNTING.total_measure == INF
        assert BI_GROWTH.total_measure == INF
        assert BI_DECAY.total_measure == 3.0

    def test_table_sums(self):
        space = AtomicSpace.from_table({0: 0.5, 1: 1.0})
        assert space.total_measure == 1.5


class TestPreimage:
    def test_backward_shift(self):
        assert preimage_set(S1, AtomSet.of([0]), 3) == AtomSet.of([-3])

    def test_forward_image_via_negative_n(self):
        assert preimage_set(S1, AtomSet.of([0]), -2) == AtomSet.of([2])

    def test_identity(self):
        assert preimage_set(IDENTITY, AtomSet.of([4, 7]), 10) == AtomSet.of([4, 7])

    def test_out_of_window_marker(self):
        marker = preimage_set(S1, AtomSet.of([0]), 100)
        assert isinstance(marker, OutOfWindow)
        assert marker.n == 100 and marker.index == -100

    def test_semigroup_law(self):
        rng = np.random.default_rng(7)
        perm_keys = list(range(-5, 6))
        shuffled = [int(v) for v in rng.permutation(perm_keys)]
        tbl = system(
            AtomicSpace.counting((-5, 5)),
            Transformation.table_bijection(dict(zip(perm_keys, shuffled))),
            1.0,
        )
        for sys_ in (S1, tbl):
            A = AtomSet.of([-2, 0, 3])
            for n in (-3, -1, 0, 2):
                for m in (-2, 1, 4):
                    one = preimage_set(sys_, A, n)
                    if isinstance(one, OutOfWindow):
                        continue
                    two = preimage_set(sys_, one, m)
                    direct = preimage_set(sys_, A, n + m)
                    if isinstance(two, OutOfWindow) or isinstance(direct, OutOfWindow):
                        continue
                    assert two == direct

    def test_additivity_over_disjoint_unions(self):
        A = AtomSet.of([-4, 1])
        B = AtomSet.of([0, 6])
        union = AtomSet.of([-4, 0, 1, 6])
        for sys_ in CATALOG:
            for n in (-5, -1, 0, 1, 5):
                pu = preimage_set(sys_, union, n)
                pa = preimage_set(sys_, A, n)
                pb = preimage_set(sys_, B, n)
                mu_u = set_measure(sys_.space, pu)
                mu_split = set_measure(sys_.space, pa) + set_measure(sys_.space, pb)
                assert abs(mu_u - mu_split) <= 1e-12 * max(1.0, mu_u)


class TestDistortion:
    def test_geometric_shift_doubles(self):
        assert distortion_bound(S1) == 2.0

    def test_bijections_preserve_counting_measure(self):
        assert distortion_bound(COUNT_SHIFT) == 1.0
        perm = Transformation.table_bijection({-1: 0, 0: 1, 1: -1})
        sys_ = system(AtomicSpace.counting((-1, 1)), perm, 1.0)
        assert distortion_bound(sys_) == 1.0

    def test_bilateral_growth_max_ratio(self):
        assert distortion_bound(GROWTH) == 2.0

    def test_iterated_bound_on_catalog(self):
        A = AtomSet.of([-1, 0, 2])
        for sys_ in CATALOG:
            M = distortion_bound(sys_)
            mu_A = set_measure(sys_.space, A)
            for n in range(1, 21):
                pre = preimage_set(sys_, A, n)
                if isinstance(pre, OutOfWindow):
                    break
                assert set_measure(sys_.space, pre) <= M**n * mu_A * (1.0 + 1e-9)


class TestValidateSystem:
    def test_catalog_systems_are_two_sided(self):
        for sys_ in CATALOG:
            rep = validate_system(sys_)
            assert rep.valid, rep.failures
            assert rep.two_sided_admissible
            assert rep.admissible_notions == (
                "expansive",
                "positive",
                "uniform_positive",
                "uniform",
            )

    def test_understated_distortion_flagged_with_witness(self):
        bad = system(GEOM_HALF, Transformation.shift(1), 1.5)
        rep = validate_system(bad)
        assert not rep.valid
        message, witness = rep.failures[0]
        assert "below computed bound" in message
        assert witness is not None
        # the witness atom really violates the stored bound
        j = bad.tau.preimage_index(witness, 1)
        assert GEOM_HALF.mass(j) / GEOM_HALF.mass(witness) > 1.5

    def test_identity_is_valid(self):
        assert validate_system(IDENTITY).valid


class TestWandering:
    def test_shift_singleton_wanders(self):
        assert is_wandering(S1, AtomSet.of([0]), (-5, 5))

    def test_identity_never_wanders(self):
        assert not is_wandering(IDENTITY, AtomSet.of([0]), (-5, 5))

    def test_two_cycle_repeats(self):
        mapping = {k: k for k in range(-4, 5)}
        mapping[0], mapping[1] = 1, 0
        sys_ = system(AtomicSpace.counting((-4, 4)), Transformation.table_bijection(mapping), 1.0)
        assert not is_wandering(sys_, AtomSet.of([0]), (-2, 2))

    def test_out_of_window_is_signalled(self):
        with pytest.raises(OutOfWindowError):
            is_wandering(S1, AtomSet.of([0]), (-100, 100))


class TestConstruction:
    def test_table_must_cover_window(self):
        with pytest.raises(ValidationError):
            AtomicSpace.from_table({0: 1.0, 2: 1.0}, window=(0, 2))

    def test_masses_must_be_positive(self):
        with pytest.raises(ValidationError):
            AtomicSpace.from_table({0: 1.0, 1: 0.0})

    def test_table_map_injectivity_enforced(self):
        with pytest.raises(ValidationError):
            Transformation.table_bijection({0: 1, 1: 1})

    def test_bijection_domain_must_match_window(self):
        with pytest.raises(ValidationError):
            system(
                AtomicSpace.counting((-2, 2)),
                Transformation.table_bijection({0: 1, 1: 0}),
                1.0,
            )

    def test_inverse_agrees_with_forward(self):
        tau = Transformation.table_bijection({0: 1, 1: 2, 2: 0})
        for k in (0, 1, 2):
            assert tau.preimage_index(tau.apply(k, 1), 1) == k
            assert tau.apply(k, 3) == k
