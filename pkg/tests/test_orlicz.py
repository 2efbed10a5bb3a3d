import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oll.errors import DomainError, ValidationError
from oll.extreal import INF
from oll.orlicz import OrliczFunction, delta2_probe, phi_eval, phi_inverse, phi_params

POWER2 = OrliczFunction.power(2)
POWER3 = OrliczFunction.power(3)
EXP = OrliczFunction.exp_minus_one()
SHIFTED = OrliczFunction.shifted_linear(1.0, 1.0)
CAPPED_12 = OrliczFunction.capped_power(1.0, 2.0)
CAPPED_22 = OrliczFunction.capped_power(2.0, 2.0)

ALL = [POWER2, POWER3, EXP, SHIFTED, CAPPED_22, OrliczFunction.shifted_linear(0.5, 2.0)]


def grid_inverse(phi, y, s_max=64.0, n=2_000_001):
    """Independent oracle: sup{s in grid : phi(s) <= y} by exhaustive search."""
    best = 0.0
    for s in np.linspace(0.0, s_max, n):
        if phi_eval(phi, float(s)) <= y:
            best = float(s)
    return best


class TestPhiEval:
    def test_square(self):
        assert phi_eval(POWER2, 3.0) == 9.0

    def test_beyond_cap_is_infinite(self):
        assert phi_eval(CAPPED_12, 3.0) == INF

    def test_exp_at_log_two(self):
        assert abs(phi_eval(EXP, math.log(2.0)) - 1.0) <= 1e-12

    def test_negative_argument_rejected(self):
        with pytest.raises(DomainError):
            phi_eval(POWER2, -0.5)

    def test_origin_vanishes(self):
        for phi in ALL:
            assert phi_eval(phi, 0.0) == 0.0


class TestPhiInverse:
    def test_square_root(self):
        assert abs(phi_inverse(POWER2, 9.0) - 3.0) <= 1e-12

    def test_flat_start_inverse_at_zero(self):
        # sup{s : max(0, s-1) <= 0} = 1, the end of the flat segment
        got = phi_inverse(SHIFTED, 0.0)
        oracle = grid_inverse(SHIFTED, 0.0, s_max=4.0)
        assert got == 1.0
        assert abs(got - oracle) <= 4.0 / 2_000_000

    def test_capped_inverse_at_infinity_is_cap(self):
        got = phi_inverse(CAPPED_22, INF)
        oracle = grid_inverse(CAPPED_22, 1e300, s_max=4.0)
        assert got == 2.0
        assert abs(got - oracle) <= 4.0 / 2_000_000

    def test_total_on_the_extended_reals(self):
        for phi in ALL:
            for y in (0.0, 0.5, 1.0, 7.0, 1e9, INF):
                assert phi_inverse(phi, y) >= 0.0


class TestPhiParams:
    @pytest.mark.parametrize(
        "phi, expected",
        [
            (POWER3, (0.0, INF)),
            (OrliczFunction.shifted_linear(1.0, 2.0), (1.0, INF)),
            (OrliczFunction.capped_power(1.0, 5.0), (0.0, 5.0)),
            (EXP, (0.0, INF)),
        ],
    )
    def test_closed_forms(self, phi, expected):
        assert phi_params(phi) == expected


class TestDelta2Probe:
    def test_power_two_doubles_with_constant_four(self):
        rep = delta2_probe(POWER2, 0.5, 256.0, 33)
        assert rep.satisfied_on_grid
        assert abs(rep.max_ratio - 4.0) <= 1e-12
        assert rep.constant_M == rep.max_ratio

    def test_capped_power_refuted_once_grid_straddles_the_cap(self):
        rep = delta2_probe(CAPPED_12, 1.0, 4096.0, 49)
        assert not rep.satisfied_on_grid
        assert rep.max_ratio == INF
        # points beyond the cap cannot witness anything and are recorded
        assert all(s > 2.0 for s in rep.skipped_infinite)

    def test_exp_ratio_grows_without_any_fixed_constant(self):
        rep = delta2_probe(EXP, 1.0, 100.0, 49)
        expected = math.expm1(200.0) / math.expm1(100.0)
        assert abs(rep.max_ratio - expected) / expected <= 1e-6
        # wider grids push the observed constant past float range entirely
        wide = delta2_probe(EXP, 1.0, 4096.0, 49)
        assert not wide.satisfied_on_grid

    def test_flat_segment_points_are_skipped_and_recorded(self):
        rep = delta2_probe(SHIFTED, 0.125, 64.0, 28)
        assert all(phi_eval(SHIFTED, s) == 0.0 for s in rep.skipped_zero)
        assert rep.satisfied_on_grid

    def test_invalid_grid_rejected(self):
        with pytest.raises(DomainError):
            delta2_probe(POWER2, 2.0, 1.0, 16)
        with pytest.raises(DomainError):
            delta2_probe(POWER2, 1.0, 2.0, 1)


class TestInvariants:
    def test_convexity_on_grid(self):
        for phi in ALL:
            xs = np.geomspace(1e-3, 50.0, 80)
            for s, t in zip(xs, xs[20:]):
                m = 0.5 * (s + t)
                fs, ft, fm = (phi_eval(phi, float(u)) for u in (s, t, m))
                if math.isinf(ft) or math.isinf(fs):
                    continue
                assert fm <= 0.5 * (fs + ft) + 1e-12 * (1.0 + ft)

    def test_inverse_consistency(self):
        for phi in ALL:
            for y in (0.0, 0.25, 1.0, 3.0, 100.0, 1e8):
                s_star = phi_inverse(phi, y)
                assert phi_eval(phi, s_star) <= y * (1.0 + 1e-12) + 1e-12
                for factor in (1.0 + 1e-6, 2.0, 10.0):
                    assert phi_eval(phi, s_star * factor + 1e-12) > y

    def test_monotone_in_both_arguments(self):
        for phi in ALL:
            xs = np.linspace(0.0, 30.0, 200)
            vals = [phi_eval(phi, float(s)) for s in xs]
            assert all(b >= a for a, b in zip(vals, vals[1:]))
            ys = np.linspace(0.0, 1e4, 200)
            invs = [phi_inverse(phi, float(y)) for y in ys]
            assert all(b >= a for a, b in zip(invs, invs[1:]))

    @given(st.floats(min_value=0.0, max_value=100.0))
    def test_round_trip_on_strictly_increasing_families(self, s):
        for phi in (OrliczFunction.power(1.0), POWER2, POWER3, EXP):
            got = phi_inverse(phi, phi_eval(phi, s))
            assert abs(got - s) <= 1e-9 * (1.0 + s)


class TestValidation:
    def test_rejects_non_convex_exponent(self):
        with pytest.raises(ValidationError, match="convex"):
            OrliczFunction.power(0.5)

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValidationError):
            OrliczFunction.shifted_linear(-1.0, 1.0)
        with pytest.raises(ValidationError):
            OrliczFunction.shifted_linear(1.0, 0.0)
        with pytest.raises(ValidationError):
            OrliczFunction.capped_power(2.0, 0.0)
        with pytest.raises(ValidationError):
            OrliczFunction("mystery")
