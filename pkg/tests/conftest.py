"""
Shared family fixtures.

Families are built on coarse sampling grids so the suite stays fast; the
sampled constants are only used as bounds, never compared exactly.
"""

import pytest

from src.maps import (
    AffineBranchSpec,
    BaseMapSpec,
    Homeomorphism,
    PiecewiseAffineSpec,
    SlopePath,
    beta_like_family,
    markov_family,
    piecewise_affine_family,
    skew_tent_family,
)

FAST = {"grid_points": 400, "param_samples": 17}


@pytest.fixture(scope="session")
def doubling_family():
    """x -> a x mod 1, containing the doubling map at a = 2."""
    return beta_like_family(BaseMapSpec.mod_one(3), (1.5, 2.9), **FAST)


@pytest.fixture(scope="session")
def beta_family():
    return beta_like_family(BaseMapSpec.mod_one(3), (2.1, 2.9), **FAST)


@pytest.fixture(scope="session")
def markov_identity():
    return markov_family(Homeomorphism(), (0.1, 0.9), **FAST)


@pytest.fixture(scope="session")
def markov_quadratic():
    return markov_family(Homeomorphism("quadratic", 0.05), (0.2, 0.8), **FAST)


@pytest.fixture(scope="session")
def symmetric_tent():
    """alpha = beta = 2 + a, the full tent map at a = 0."""
    return skew_tent_family(SlopePath.linear(2.0, 1.0), SlopePath.linear(2.0, 1.0), (-0.25, 0.0), **FAST)


@pytest.fixture(scope="session")
def mv_tent():
    """Increasing slopes ending at the full tent map, never renormalizable."""
    return skew_tent_family(SlopePath.linear(1.3, 0.7), SlopePath.linear(1.5, 0.5), (0.0, 1.0), **FAST)


@pytest.fixture(scope="session")
def frozen_tent():
    return skew_tent_family(SlopePath.constant(2.0), SlopePath.constant(1.5), (0.0, 1.0), **FAST)


@pytest.fixture(scope="session")
def affine_markov():
    """The identity Markov family written as a piecewise affine family."""
    spec = PiecewiseAffineSpec(
        breakpoints=((0.0, 1.0),),
        branches=(
            AffineBranchSpec(left=(0.0, 0.0), right=(1.0, 0.0)),
            AffineBranchSpec(left=(0.0, 0.0), right=(1.0, 0.0)),
        ),
    )
    return piecewise_affine_family(spec, (0.2, 0.8), **FAST)
