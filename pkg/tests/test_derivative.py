import math

import numpy as np
import pytest

from src.derivative import (
    CurveKind,
    CurveSpec,
    CylinderCrossing,
    TurningPointHit,
    check_condition_one,
    condition_one_threshold,
    crossing_free_depth,
    finite_difference_check,
    growth_rate,
    orbit_with_derivative,
    parameter_grid,
    skew_tent_partials,
    slope_partials,
    transversality_report,
)
from src.maps import Homeomorphism, markov_family, snapshot
from src.symbolic import NotUnimodal, is_renormalizable

from .conftest import FAST


@pytest.fixture(scope="module")
def markov_middle():
    return markov_family(Homeomorphism(), (0.3, 0.7), **FAST)


class TestCurves:
    def test_parse(self):
        curve = CurveSpec.parse("linear:0.7,-0.7")
        assert curve.kind is CurveKind.LINEAR
        assert curve.evaluate(0.5) == pytest.approx((0.35, -0.7))

    def test_period_two_point(self):
        value, deriv = CurveSpec(CurveKind.MARKOV_PERIOD_TWO).evaluate(0.5)
        assert value == pytest.approx(1.0 / 3.0)
        assert deriv == pytest.approx(0.75 / 0.5625)

    def test_table_interpolates(self):
        curve = CurveSpec(CurveKind.TABLE, table=((0.0, 0.0, 1.0), (1.0, 1.0, 1.0)))
        assert curve.evaluate(0.25) == pytest.approx((0.25, 1.0))


class TestOrbit:
    def test_markov_derivatives(self, markov_identity):
        record = orbit_with_derivative(markov_identity, 0.5, 0.3, 0.0, 3)
        # d_1 = -x/a^2 at x = 0.3
        assert record.points[:3] == pytest.approx([0.3, 0.6, 0.2])
        assert record.param_derivs[1] == pytest.approx(-1.2)
        assert record.space_derivs[3] == pytest.approx(8.0)
        assert record.reliable(3)

    def test_breakpoint_hit_marks_unreliable(self, doubling_family):
        record = orbit_with_derivative(doubling_family, 2.0, 0.5, 0.0, 4)
        assert record.breakpoint_hits[0] == 0
        assert not record.reliable(1)

    def test_finite_differences(self, markov_identity):
        assert finite_difference_check(markov_identity, 0.5, 0.3, 0.0, 10) <= 1e-5

    @pytest.mark.parametrize("name", ["doubling_family", "markov_identity", "markov_quadratic", "mv_tent", "affine_markov"])
    def test_finite_differences_random_seeds(self, name, request):
        family = request.getfixturevalue(name)
        lo, hi = family.param_interval.lo, family.param_interval.hi
        rng = np.random.default_rng(7)
        depths = []
        for _ in range(100):
            a = float(rng.uniform(lo + 0.05 * (hi - lo), hi - 0.05 * (hi - lo)))
            domain = snapshot(family, a).domain
            x = float(rng.uniform(domain.lo + 1e-3 * domain.length, domain.hi - 1e-3 * domain.length))
            x_deriv = float(rng.uniform(-1.0, 1.0))
            depth = crossing_free_depth(family, a, x, x_deriv, 20)
            depths.append(depth)
            assert finite_difference_check(family, a, x, x_deriv, depth) <= 1e-5
        assert sum(d >= 1 for d in depths) >= 95
        assert np.median(depths) >= 4

    def test_crossing_detected(self, markov_identity):
        # The cut sits at a and moves with it
        x = 0.5 + 1e-9
        assert crossing_free_depth(markov_identity, 0.5, x, 0.0, 5) == 0
        with pytest.raises(CylinderCrossing):
            finite_difference_check(markov_identity, 0.5, x, 0.0, 5)


class TestConditionOne:
    def test_beta_family_turning_value(self, beta_family):
        report = check_condition_one(beta_family, CurveSpec(CurveKind.CONSTANT, (1.0,)), j_max=20, grid_size=10)
        assert report.j0 == 3
        assert report.passed
        assert report.status == "ok"
        assert report.sign_constant
        assert report.c0_estimate >= 1.0
        assert report.threshold == pytest.approx(condition_one_threshold(beta_family))

    def test_markov_period_two_never_grows(self, markov_middle):
        report = check_condition_one(markov_middle, CurveSpec(CurveKind.MARKOV_PERIOD_TWO), j_max=30, grid_size=10)
        assert not report.passed
        assert report.status == "no_j0_found"
        assert report.j0 is None
        assert report.to_dict()["pass"] is False

    def test_seeded_grid(self, markov_identity):
        first = parameter_grid(markov_identity, 20, seed=3)
        assert np.array_equal(first, parameter_grid(markov_identity, 20, seed=3))
        assert np.all(np.diff(first) >= 0.0)
        assert first.min() >= 0.1 and first.max() <= 0.9


class TestTransversality:
    def test_full_tent(self, symmetric_tent):
        report = transversality_report(symmetric_tent, 0.0)
        assert report.lambda0 == pytest.approx(1.0)
        assert report.j0_found == 3
        assert report.deriv_at_j0 == pytest.approx(-3.0)
        assert report.turning_periodic is None
        assert report.good_map

    def test_periodic_turning_point(self, frozen_tent):
        report = transversality_report(frozen_tent, 0.5)
        assert report.lambda0 == 0.0
        assert report.j0_found is None
        assert math.isnan(report.deriv_at_j0)
        assert report.turning_periodic == 3
        assert report.good_map

    def test_needs_skew_tent(self, markov_identity):
        with pytest.raises(NotUnimodal):
            transversality_report(markov_identity, 0.5)

    def test_slope_partials_full_tent(self):
        result = slope_partials(2.0, 2.0, 3)
        assert (result.d_alpha, result.d_beta) == pytest.approx((-1.0, -2.0))
        assert result.reference_sign == -1
        assert result.signs_agree

    def test_turning_point_hit(self):
        with pytest.raises(TurningPointHit):
            slope_partials(2.0, 1.5, 5)

    def test_partial_signs_agree_on_increasing_path(self, mv_tent):
        for a in np.linspace(0.02, 0.98, 20):
            alpha, beta = mv_tent.model.slopes(a)
            assert not is_renormalizable(alpha, beta)
            assert growth_rate(alpha, beta) > 0.0
            for j in range(3, 41):
                try:
                    result = slope_partials(alpha, beta, j)
                except TurningPointHit:
                    break
                assert result.signs_agree, (a, j)

    def test_skew_tent_partials(self, mv_tent):
        d_alpha, d_beta = skew_tent_partials(mv_tent, 0.5, 6)
        assert np.sign(d_alpha) == np.sign(d_beta)

    def test_growth_rate(self):
        assert growth_rate(2.0, 2.0) == pytest.approx(math.log(2.0))
        assert growth_rate(1.6, 1.8) > 0.0
