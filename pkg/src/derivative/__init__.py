"""
Parameter derivatives along orbits, the derivative-comparability check and
turning-point transversality.
"""

from .condition_one import check_condition_one, condition_one_threshold, parameter_grid
from .curves import CurveKind, CurveSpec
from .models import (
    ConditionOneReport,
    CylinderCrossing,
    DerivativeError,
    DomainEscape,
    OrbitRecord,
    SlopePartials,
    TransversalityReport,
    TurningPointHit,
)
from .orbit import crossing_free_depth, finite_difference_check, orbit_with_derivative
from .transversality import growth_rate, skew_tent_partials, slope_partials, transversality_report

__all__ = [
    "ConditionOneReport",
    "CurveKind",
    "CurveSpec",
    "CylinderCrossing",
    "DerivativeError",
    "DomainEscape",
    "OrbitRecord",
    "SlopePartials",
    "TransversalityReport",
    "TurningPointHit",
    "check_condition_one",
    "condition_one_threshold",
    "crossing_free_depth",
    "finite_difference_check",
    "growth_rate",
    "orbit_with_derivative",
    "parameter_grid",
    "skew_tent_partials",
    "slope_partials",
    "transversality_report",
]
