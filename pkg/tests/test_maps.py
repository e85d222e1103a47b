import numpy as np
import pytest

from src.maps import (
    AtBreakpoint,
    BaseMapSpec,
    DomainViolation,
    EmptyParameterInterval,
    FamilyKind,
    Homeomorphism,
    InadmissibleSlopes,
    InvalidSlopes,
    NonMonotoneBranch,
    ParamOutOfRange,
    SlopePath,
    evaluate,
    family_from_dict,
    family_to_dict,
    invariant_interval,
    markov_family,
    orbit_points,
    param_partial,
    skew_tent_family,
    snapshot,
    space_derivative,
)

from .conftest import FAST


class TestConstruction:
    def test_inadmissible_skew_tent_slopes(self):
        # 1/(2 + a) + 1/(2 + a) < 1 for a > 0
        with pytest.raises(InadmissibleSlopes):
            skew_tent_family(SlopePath.linear(2.0, 1.0), SlopePath.linear(2.0, 1.0), (0.0, 0.5), **FAST)

    def test_slope_one_rejected(self):
        with pytest.raises(InvalidSlopes):
            skew_tent_family(SlopePath.constant(1.0), SlopePath.constant(2.0), (0.0, 1.0), **FAST)

    def test_empty_interval(self):
        with pytest.raises(EmptyParameterInterval):
            markov_family(Homeomorphism(), (0.5, 0.5), **FAST)

    def test_markov_constants(self, markov_identity):
        assert markov_identity.family_kind is FamilyKind.MARKOV_EXAMPLE
        assert markov_identity.lambda_min == pytest.approx(1.0 / 0.9)
        assert markov_identity.lambda_max == pytest.approx(10.0)
        assert markov_identity.delta0 == pytest.approx(0.1)
        assert markov_identity.lip_const > 0.0

    def test_homeomorphism_inverse(self):
        g = Homeomorphism("quadratic", 0.3)
        x = np.linspace(0.0, 1.0, 11)
        assert np.allclose(g.inverse(g.value(x)), x, atol=1e-14)

    def test_homeomorphism_must_be_monotone(self):
        with pytest.raises(NonMonotoneBranch):
            Homeomorphism("quadratic", 1.0)


class TestDoubling:
    def test_breakpoints(self, doubling_family):
        snap = snapshot(doubling_family, 2.0)
        assert snap.breakpoints == pytest.approx((0.0, 0.5, 1.0))
        assert invariant_interval(snap).to_list() == [0.0, 1.0]

    def test_evaluate_is_right_continuous(self, doubling_family):
        snap = snapshot(doubling_family, 2.0)
        assert evaluate(snap, 0.75) == pytest.approx(0.5)
        assert evaluate(snap, 0.5) == 0.0

    def test_derivatives(self, doubling_family):
        snap = snapshot(doubling_family, 2.0)
        assert space_derivative(snap, 0.3) == pytest.approx(2.0)
        assert param_partial(doubling_family, 2.0, 0.3) == pytest.approx(0.3)
        with pytest.raises(AtBreakpoint):
            space_derivative(snap, 0.5)

    def test_out_of_range(self, doubling_family):
        with pytest.raises(ParamOutOfRange):
            snapshot(doubling_family, 3.5)
        with pytest.raises(DomainViolation):
            evaluate(snapshot(doubling_family, 2.0), 1.5)


class TestMarkov:
    def test_values_and_partials(self, markov_identity):
        snap = snapshot(markov_identity, 0.5)
        assert evaluate(snap, 0.25) == pytest.approx(0.5)
        assert param_partial(markov_identity, 0.5, 0.25) == pytest.approx(-1.0)
        assert param_partial(markov_identity, 0.5, 0.75) == pytest.approx(-1.0)

    def test_orbit(self, markov_identity):
        points = orbit_points(snapshot(markov_identity, 0.5), 0.3, 3)
        assert points == pytest.approx([0.3, 0.6, 0.2, 0.4])

    def test_quadratic_cut(self, markov_quadratic):
        snap = snapshot(markov_quadratic, 0.5)
        cut = snap.interior_breakpoints[0]
        assert Homeomorphism("quadratic", 0.05).value(cut) == pytest.approx(0.5)


class TestSkewTent:
    def test_full_tent(self, symmetric_tent):
        snap = snapshot(symmetric_tent, 0.0)
        assert snap.domain.to_list() == [-1.0, 1.0]
        assert evaluate(snap, 1.0) == pytest.approx(-1.0)

    def test_partials(self, symmetric_tent):
        assert param_partial(symmetric_tent, 0.0, 0.5) == pytest.approx(-0.5)
        assert param_partial(symmetric_tent, 0.0, -0.5) == pytest.approx(-0.5)

    def test_frozen_family_has_zero_partials(self, frozen_tent):
        assert param_partial(frozen_tent, 0.5, 0.3) == 0.0
        assert frozen_tent.sup_param_partial == 0.0


class TestPiecewiseAffine:
    def test_matches_markov(self, markov_identity, affine_markov):
        affine = affine_markov
        for x in (0.1, 0.3, 0.6, 0.9):
            assert evaluate(snapshot(affine, 0.4), x) == pytest.approx(evaluate(snapshot(markov_identity, 0.4), x))
            assert param_partial(affine, 0.4, x) == pytest.approx(param_partial(markov_identity, 0.4, x))


class TestSerialization:
    def test_family_spec_round_trip(self):
        data = {"kind": "beta_like", "param_interval": [1.5, 2.5], "base_map": {"mod_one": 3}}
        family = family_from_dict(data, grid_points=400)
        spec = family_to_dict(family)
        assert spec["kind"] == "beta_like"
        assert spec["base_map"] == BaseMapSpec.mod_one(3).to_dict()
        rebuilt = family_from_dict(spec, grid_points=400)
        assert rebuilt.lambda_min == pytest.approx(family.lambda_min)


class TestSampledBounds:
    @pytest.mark.parametrize("name", ["doubling_family", "markov_identity", "symmetric_tent", "mv_tent"])
    def test_derivative_within_family_bounds(self, name, request):
        family = request.getfixturevalue(name)
        lo, hi = family.param_interval.lo, family.param_interval.hi
        rng = np.random.default_rng(11)
        for _ in range(1000):
            snap = snapshot(family, float(rng.uniform(lo, hi)))
            x = float(rng.uniform(snap.domain.lo, snap.domain.hi))
            slope = abs(space_derivative(snap, x))
            assert family.lambda_min - 1e-9 <= slope <= family.lambda_max + 1e-9

    def test_skew_tent_interval_is_forward_invariant(self, mv_tent):
        snap = snapshot(mv_tent, 0.5)
        domain = invariant_interval(snap)
        tol = 1e-12 * domain.length
        for x in np.linspace(domain.lo, domain.hi, 1000):
            assert domain.lo - tol <= evaluate(snap, float(x)) <= domain.hi + tol
