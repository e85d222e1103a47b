"""
Invariant densities: Ulam estimates, the Parry oracle and the variation bounds.
"""

from .models import (
    BinsTooSmall,
    DensityError,
    DensityEstimate,
    ExpansionTooWeak,
    NoConvergence,
    SupportMismatch,
    VariationReport,
)
from .parry import parry_density_oracle, parry_terms
from .support import histogram_density, support_estimate
from .ulam import bin_edges, invariant_density, ulam_matrix
from .variation import density_bounds_and_variation, minimal_tau, variation_constant

__all__ = [
    "BinsTooSmall",
    "DensityError",
    "DensityEstimate",
    "ExpansionTooWeak",
    "NoConvergence",
    "SupportMismatch",
    "VariationReport",
    "bin_edges",
    "density_bounds_and_variation",
    "histogram_density",
    "invariant_density",
    "minimal_tau",
    "parry_density_oracle",
    "parry_terms",
    "support_estimate",
    "ulam_matrix",
    "variation_constant",
]
