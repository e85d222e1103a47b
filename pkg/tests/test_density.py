import math

import numpy as np
import pytest

from src.density import (
    BinsTooSmall,
    DensityEstimate,
    NoConvergence,
    density_bounds_and_variation,
    histogram_density,
    invariant_density,
    minimal_tau,
    parry_density_oracle,
    parry_terms,
    support_estimate,
    ulam_matrix,
    variation_constant,
)
from src.density.models import DensityError, ExpansionTooWeak
from src.maps import Interval, snapshot

GOLDEN = 0.5 * (1.0 + math.sqrt(5.0))


class TestUlamMatrix:
    def test_doubling_two_bins(self, doubling_family):
        matrix = ulam_matrix(snapshot(doubling_family, 2.0), 2).toarray()
        assert matrix == pytest.approx(np.full((2, 2), 0.5))

    def test_markov_four_bins(self, markov_identity):
        matrix = ulam_matrix(snapshot(markov_identity, 0.5), 4).toarray()
        assert matrix[0] == pytest.approx([0.5, 0.5, 0.0, 0.0])
        assert matrix[3] == pytest.approx([0.0, 0.0, 0.5, 0.5])

    @pytest.mark.parametrize("name,a", [
        ("beta_family", 2.5),
        ("markov_quadratic", 0.37),
        ("mv_tent", 0.6),
    ])
    def test_rows_are_stochastic(self, name, a, request):
        family = request.getfixturevalue(name)
        matrix = ulam_matrix(snapshot(family, a), 256)
        assert np.asarray(matrix.sum(axis=1)).ravel() == pytest.approx(np.ones(256), abs=1e-12)
        assert matrix.data.min() >= 0.0

    def test_too_few_bins(self, doubling_family):
        with pytest.raises(BinsTooSmall):
            ulam_matrix(snapshot(doubling_family, 2.0), 1)


class TestInvariantDensity:
    def test_doubling_is_uniform(self, doubling_family):
        estimate = invariant_density(snapshot(doubling_family, 2.0), 64)
        assert estimate.values == pytest.approx(np.ones(64), abs=1e-8)
        assert estimate.normalization_residual <= 1e-12
        assert estimate.stationarity_residual <= 1e-10

    def test_markov_identity_is_uniform(self, markov_identity):
        estimate = invariant_density(snapshot(markov_identity, 0.37), 128)
        assert estimate.values == pytest.approx(np.ones(128), abs=1e-8)

    def test_to_rows(self, doubling_family):
        rows = invariant_density(snapshot(doubling_family, 2.0), 4).to_rows()
        assert len(rows) == 4
        assert rows[0][:2] == pytest.approx((0.0, 0.25))
        assert rows[0][2] == pytest.approx(1.0)

    def test_no_convergence(self, doubling_family):
        with pytest.raises(NoConvergence) as info:
            invariant_density(snapshot(doubling_family, GOLDEN), 256, tol=1e-12, max_iter=1)
        assert info.value.max_iter == 1

    def test_cdf(self, doubling_family):
        estimate = invariant_density(snapshot(doubling_family, 2.0), 8)
        assert estimate.cdf(0.5) == pytest.approx(0.5)
        assert estimate.cdf(1.0) == pytest.approx(1.0)
        assert estimate.cdf(-1.0) == 0.0


class TestParry:
    def test_terms_terminate(self):
        assert parry_terms(2.0) == [(1.0, 1.0)]
        assert len(parry_terms(GOLDEN)) == 2

    def test_beta_two_is_uniform(self):
        oracle = parry_density_oracle(2.0, 16)
        assert oracle.values == pytest.approx(np.ones(16))

    def test_golden_closed_form(self):
        edges = np.array([0.0, 1.0 / GOLDEN, 1.0])
        oracle = parry_density_oracle(GOLDEN, edges)
        c = 1.0 / (1.0 + GOLDEN ** -2)
        assert oracle.values == pytest.approx([c * (1.0 + 1.0 / GOLDEN), c], rel=1e-9)

    @pytest.mark.parametrize("beta", [1.8, GOLDEN, 2.5, math.e])
    def test_ulam_matches_parry(self, beta, doubling_family):
        estimate = invariant_density(snapshot(doubling_family, beta), 4096)
        oracle = parry_density_oracle(beta, 4096)
        assert estimate.l1_distance(oracle) <= 0.01
        report, _, _ = density_bounds_and_variation(snapshot(doubling_family, beta), estimate)
        assert report.lower_bound_ok


class TestVariation:
    def test_minimal_tau(self):
        assert minimal_tau(2.0) == 2
        assert minimal_tau(GOLDEN) == 3
        with pytest.raises(ExpansionTooWeak):
            minimal_tau(1.0)

    def test_variation_constant(self):
        assert variation_constant(0.25, 2.0, 2) == pytest.approx(12.0)
        with pytest.raises(ExpansionTooWeak):
            variation_constant(0.25, 2.0, 1)

    def test_doubling(self, doubling_family):
        snap = snapshot(doubling_family, 2.0)
        estimate = invariant_density(snap, 256)
        report, phi_inf, phi_sup = density_bounds_and_variation(snap, estimate, tau=2)
        assert report.delta_a == pytest.approx(0.25)
        assert report.cv == pytest.approx(12.0)
        assert report.empirical_variation == pytest.approx(0.0, abs=1e-6)
        assert report.lower_bound_ok
        assert report.variation_within_bound
        assert phi_inf == pytest.approx(1.0, abs=1e-8)
        assert phi_sup == pytest.approx(1.0, abs=1e-8)
        assert report.c1_estimate == pytest.approx(1.0, abs=1e-6)
        assert report.to_dict()["Cv"] == pytest.approx(12.0)

    def test_golden_within_bound(self, doubling_family):
        snap = snapshot(doubling_family, GOLDEN)
        report, phi_inf, _ = density_bounds_and_variation(snap, invariant_density(snap, 1024))
        assert report.tau == 3
        assert report.variation_within_bound
        assert report.lower_bound_ok
        assert phi_inf > 0.5


class TestTwoSidedBounds:
    @pytest.mark.parametrize(
        "name", ["beta_family", "markov_identity", "markov_quadratic", "mv_tent", "affine_markov"],
    )
    def test_density_is_bounded_away_from_zero(self, name, request):
        family = request.getfixturevalue(name)
        rng = np.random.default_rng(21)
        for a in rng.uniform(family.param_interval.lo, family.param_interval.hi, 20):
            snap = snapshot(family, float(a))
            report, phi_inf, phi_sup = density_bounds_and_variation(snap, invariant_density(snap, 256))
            assert phi_inf > 0.0, a
            assert math.isfinite(phi_sup)
            assert math.isfinite(report.c1_estimate)


class TestSupport:
    def test_full_tent(self, symmetric_tent):
        hull, mask = support_estimate(snapshot(symmetric_tent, 0.0), bins=128)
        assert hull.to_list() == pytest.approx([-1.0, 1.0])
        assert mask.all()

    def test_beta(self, beta_family):
        hull, _ = support_estimate(snapshot(beta_family, 2.5), bins=256)
        assert hull.to_list() == pytest.approx([0.0, 1.0])

    def test_histogram(self):
        sample = np.random.default_rng(11).uniform(0.0, 1.0, 100_000)
        estimate = histogram_density(sample, Interval(0.0, 1.0), 10)
        assert estimate.values == pytest.approx(np.ones(10), abs=0.05)
        assert estimate.normalization_residual <= 1e-12

    def test_histogram_needs_points(self):
        with pytest.raises(ValueError):
            histogram_density([2.0, 3.0], Interval(0.0, 1.0), 10)

    def test_l1_needs_same_bins(self):
        first = DensityEstimate(np.linspace(0, 1, 3), np.ones(2), Interval(0, 1), 0.0)
        second = DensityEstimate(np.linspace(0, 1, 5), np.ones(4), Interval(0, 1), 0.0)
        with pytest.raises(DensityError):
            first.l1_distance(second)
