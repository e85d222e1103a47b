"""
Birkhoff empirical measures, F_n statistics and typicality sweeps.
"""

from .birkhoff import (
    birkhoff_statistic,
    empirical_constant,
    limsup_check,
    limsup_flags,
    relative_length,
    shift_orbit,
)
from .empirical import EmpiricalMeasure, empirical_measure, frozen_from, kolmogorov_distance, require_unfrozen
from .models import EmptyOrbit, OrbitCollapsed, SweepRow, TestInterval, TypicalityError, TypicalityReport
from .sweep import parameter_sweep

__all__ = [
    "EmpiricalMeasure",
    "EmptyOrbit",
    "OrbitCollapsed",
    "SweepRow",
    "TestInterval",
    "TypicalityError",
    "TypicalityReport",
    "birkhoff_statistic",
    "empirical_constant",
    "empirical_measure",
    "frozen_from",
    "kolmogorov_distance",
    "limsup_check",
    "limsup_flags",
    "parameter_sweep",
    "relative_length",
    "require_unfrozen",
    "shift_orbit",
]
