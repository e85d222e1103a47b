"""
One-parameter families of piecewise expanding interval maps.

Provides the four family kinds (beta-like, skew tent, Markov example,
piecewise affine), snapshots at a fixed parameter, and pointwise
evaluation of values, space derivatives and parameter partials.
"""

from .branches import BetaLikeModel, BranchModel, MarkovModel, PiecewiseAffineModel, SkewTentModel
from .families import (
    beta_like_family,
    build_family,
    evaluate,
    invariant_interval,
    markov_family,
    orbit_points,
    param_partial,
    piecewise_affine_family,
    skew_tent_family,
    snapshot,
    space_derivative,
)
from .models import (
    AffineBranchSpec,
    AtBreakpoint,
    BaseMapSpec,
    DomainViolation,
    EmptyParameterInterval,
    FamilyDescriptor,
    FamilyKind,
    Homeomorphism,
    InadmissibleSlopes,
    Interval,
    InvalidSlopes,
    MapError,
    MapSnapshot,
    NonMonotoneBranch,
    ParamOutOfRange,
    PiecewiseAffineSpec,
    SlopePath,
)
from .serialization import FamilySpecError, family_from_dict, family_to_dict, load_family

__all__ = [
    "AffineBranchSpec",
    "AtBreakpoint",
    "BaseMapSpec",
    "BetaLikeModel",
    "BranchModel",
    "DomainViolation",
    "EmptyParameterInterval",
    "FamilyDescriptor",
    "FamilyKind",
    "FamilySpecError",
    "Homeomorphism",
    "InadmissibleSlopes",
    "Interval",
    "InvalidSlopes",
    "MapError",
    "MapSnapshot",
    "MarkovModel",
    "NonMonotoneBranch",
    "ParamOutOfRange",
    "PiecewiseAffineModel",
    "PiecewiseAffineSpec",
    "SkewTentModel",
    "SlopePath",
    "beta_like_family",
    "build_family",
    "evaluate",
    "family_from_dict",
    "family_to_dict",
    "invariant_interval",
    "load_family",
    "markov_family",
    "orbit_points",
    "param_partial",
    "piecewise_affine_family",
    "skew_tent_family",
    "snapshot",
    "space_derivative",
]
