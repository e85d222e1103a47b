import math

import numpy as np
import pytest

from src.density import DensityEstimate, histogram_density
from src.derivative import CurveKind, CurveSpec, parameter_grid
from src.maps import Interval
from src.typicality import (
    EmptyOrbit,
    OrbitCollapsed,
    TestInterval,
    TypicalityError,
    birkhoff_statistic,
    empirical_constant,
    empirical_measure,
    frozen_from,
    kolmogorov_distance,
    limsup_check,
    limsup_flags,
    parameter_sweep,
    shift_orbit,
)

UNIT = Interval(0.0, 1.0)


def uniform_density(bins=4):
    return DensityEstimate(np.linspace(0.0, 1.0, bins + 1), np.ones(bins), UNIT, 0.0)


@pytest.fixture(scope="module")
def doubling_orbit():
    return shift_orbit(2, 10 ** 6, seed=7)


class TestTestInterval:
    def test_clipped_ends_are_closed(self):
        b = TestInterval.from_center(0.9, 0.2, UNIT)
        assert (b.lo, b.hi) == pytest.approx((0.7, 1.0))
        assert not b.lo_closed and b.hi_closed
        assert b.label == "(0.7,1]"

    def test_open_ends(self):
        b = TestInterval(0.4, 0.5)
        assert list(b.indicator([0.4, 0.45, 0.5])) == [False, True, False]

    def test_empty_rejected(self):
        with pytest.raises(TypicalityError):
            TestInterval(0.5, 0.5)

    def test_clip_to_domain(self):
        b = TestInterval(0.9, 1.1).clip(UNIT)
        assert (b.lo, b.hi) == (0.9, 1.0)
        assert b.hi_closed and not b.lo_closed
        assert b.label == "(0.9,1]"
        assert TestInterval(0.2, 0.3).clip(UNIT) == TestInterval(0.2, 0.3)
        with pytest.raises(TypicalityError):
            TestInterval(1.2, 1.5).clip(UNIT)


class TestEmpirical:
    def test_cdf_steps(self):
        measure = empirical_measure(np.array([0.75, 0.25]))
        assert measure.cdf(0.25) == pytest.approx(0.5)
        assert measure.cdf(0.5) == pytest.approx(0.5)
        assert measure.cdf(0.75) == pytest.approx(1.0)

    def test_frozen_tail(self):
        assert frozen_from(np.array([0.3, 0.6, 0.0, 0.0])) == 2
        assert frozen_from(np.array([0.5, 0.5, 0.5])) == 0
        assert frozen_from(np.array([0.1, 0.2, 0.4])) is None

    def test_burn_in_consumes_orbit(self):
        with pytest.raises(EmptyOrbit):
            empirical_measure(np.array([0.1, 0.2]), burn_in=2)

    def test_point_mass_against_uniform(self):
        measure = empirical_measure(np.full(10, 0.5))
        assert kolmogorov_distance(measure, uniform_density()) == pytest.approx(0.5)

    def test_uniform_sample(self):
        sample = np.random.default_rng(5).uniform(0.0, 1.0, 100_000)
        assert kolmogorov_distance(empirical_measure(sample), uniform_density(64)) <= 0.01

    def test_histogram_of_the_sample_is_close(self):
        sample = np.random.default_rng(8).uniform(0.0, 1.0, 50_000)
        bins = 64
        density = histogram_density(sample, UNIT, bins)
        assert kolmogorov_distance(empirical_measure(sample), density) <= 1.0 / bins


class TestBirkhoff:
    def test_whole_domain(self, doubling_orbit):
        b = TestInterval.from_center(0.5, 0.5, UNIT)
        assert birkhoff_statistic(doubling_orbit, b, 1000) == 1.0
        assert limsup_flags(doubling_orbit, b, 1.0, [10, 1000], UNIT) == [True, True]

    def test_additive_over_disjoint_sets(self, doubling_orbit):
        left, right = TestInterval(0.1, 0.3), TestInterval(0.3, 0.5)
        n = 10_000
        points = doubling_orbit.points[1:n + 1]
        both = np.count_nonzero((points > 0.1) & (points < 0.5) & (points != 0.3))
        total = birkhoff_statistic(doubling_orbit, left, n) + birkhoff_statistic(doubling_orbit, right, n)
        assert total == pytest.approx(both / n)

    def test_doubling_frequency(self, doubling_orbit):
        b = TestInterval(0.4, 0.5)
        f_n = birkhoff_statistic(doubling_orbit, b, 10 ** 6)
        assert 0.097 <= f_n <= 0.103
        assert limsup_flags(doubling_orbit, b, 2.0, [10 ** 6], UNIT) == [True]
        assert empirical_constant(doubling_orbit, b, 10 ** 6, UNIT) == pytest.approx(1.0, abs=0.03)

    def test_n_bounds(self, doubling_orbit):
        with pytest.raises(EmptyOrbit):
            birkhoff_statistic(doubling_orbit, TestInterval(0.4, 0.5), 0)
        with pytest.raises(ValueError):
            birkhoff_statistic(doubling_orbit, TestInterval(0.4, 0.5), 10 ** 6 + 1)

    def test_shift_orbit_follows_the_map(self, doubling_orbit):
        x = doubling_orbit.points[:101]
        step = np.abs(x[1:] - (2.0 * x[:-1]) % 1.0)
        assert np.minimum(step, 1.0 - step).max() <= 1e-9
        assert len(doubling_orbit) == 10 ** 6 + 1

    def test_shift_orbit_is_uniform(self):
        orbit = shift_orbit(3, 100_000, seed=1)
        assert kolmogorov_distance(empirical_measure(orbit), uniform_density(64)) <= 0.01

    def test_markov_limsup(self, markov_identity):
        curve = CurveSpec(CurveKind.LINEAR, (0.7, -0.7))
        flags = limsup_check(markov_identity, 0.37, curve, TestInterval(0.2, 0.3), 2.0, [10 ** 4, 10 ** 5])
        assert flags == [True, True]

    def test_limsup_rejects_collapsed_float_orbit(self, doubling_family):
        # x -> 2x mod 1 shifts out one binary digit per step
        curve = CurveSpec(CurveKind.CONSTANT, (math.pi / 10.0,))
        with pytest.raises(OrbitCollapsed):
            limsup_check(doubling_family, 2.0, curve, TestInterval(0.4, 0.5), 2.0, [10 ** 4])


class TestSweep:
    def test_orbit_on_breakpoint_fails(self, beta_family):
        report = parameter_sweep(
            beta_family, CurveSpec(CurveKind.RECIPROCAL, (1.0,)), [2.3, 2.6],
            n=2000, bins=256, burn_in=100,
        )
        for row in report.rows:
            assert row.on_breakpoint
            assert not row.passed
            assert row.kolmogorov_distance > 0.9
            assert row.error is None
        assert report.pass_fraction == 0.0

    def test_errors_stay_in_their_row(self, markov_identity):
        report = parameter_sweep(markov_identity, CurveSpec(CurveKind.LINEAR, (0.7, -0.7)), [0.3, 0.5], n=0, bins=64)
        assert len(report.failures) == 2
        assert all(row.error.startswith("EmptyOrbit") for row in report.rows)

    def test_rows_keep_parameter_order(self, markov_identity):
        params = [0.6, 0.2, 0.4]
        b = TestInterval(0.2, 0.3)
        report = parameter_sweep(
            markov_identity, CurveSpec(CurveKind.LINEAR, (0.7, -0.7)), params,
            n=5000, bins=128, burn_in=100, test_intervals=[b],
        )
        assert [row.param for row in report.rows] == params
        assert set(report.smallest_constants()) == {b.label}
        again = parameter_sweep(
            markov_identity, CurveSpec(CurveKind.LINEAR, (0.7, -0.7)), params,
            n=5000, bins=128, burn_in=100, test_intervals=[b],
        )
        assert [r.kolmogorov_distance for r in again.rows] == [r.kolmogorov_distance for r in report.rows]

    @pytest.mark.slow
    def test_markov_orbits_are_typical(self, markov_identity):
        params = parameter_grid(markov_identity, 20, seed=2024)
        report = parameter_sweep(
            markov_identity, CurveSpec(CurveKind.LINEAR, (0.7, -0.7)), params,
            n=10 ** 6, bins=4096, threshold=0.01,
        )
        assert report.pass_fraction >= 0.95

    def test_intervals_past_the_domain_are_clipped(self, markov_identity):
        b = TestInterval.parse("0.9,1.1", Interval(-np.inf, np.inf))
        report = parameter_sweep(
            markov_identity, CurveSpec(CurveKind.LINEAR, (0.7, -0.7)), [0.37],
            n=200_000, bins=256, burn_in=1000, test_intervals=[b],
        )
        row = report.rows[0]
        assert row.error is None
        f_n, c = row.f_n[b.label], row.empirical_c[b.label]
        assert c == pytest.approx(f_n / 0.1)
        assert 0.9 <= c <= 1.1

    def test_collapsed_float_orbit_is_not_a_typicality_fail(self, doubling_family):
        report = parameter_sweep(
            doubling_family, CurveSpec(CurveKind.CONSTANT, (math.pi / 10.0,)), [2.0],
            n=2000, bins=64, burn_in=100,
        )
        row = report.rows[0]
        assert not row.on_breakpoint
        assert row.error.startswith("OrbitCollapsed")
        assert math.isnan(row.kolmogorov_distance)
        assert math.isnan(report.worst_distance)
