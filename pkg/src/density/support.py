"""
Support of the invariant measure and densities from samples.
"""

import logging
from typing import Optional, Tuple

import numpy as np

from src.config.settings import Defaults
from src.maps.families import invariant_interval
from src.maps.models import Interval, MapSnapshot

from .models import DensityEstimate, SupportMismatch
from .ulam import bin_edges, invariant_density, mass_hull, support_tolerance

logger = logging.getLogger(__name__)


def support_estimate(
    snap: MapSnapshot,
    density: Optional[DensityEstimate] = None,
    bins: Optional[int] = None,
    strict: bool = True,
) -> Tuple[Interval, np.ndarray]:
    """
    Hull of the bins carrying mass, cross-checked against the invariant interval.

    Args:
        snap: Frozen map
        density: Converged estimate; computed with `bins` when None
        bins: Bin count used when density is None
        strict: Raise on disagreement instead of logging it

    Returns:
        (support interval, boolean mask of bins with mass)

    Raises:
        SupportMismatch: If strict and an end differs by more than one bin width
    """
    if density is None:
        density = invariant_density(snap, bins)
    masses = density.masses
    threshold = support_tolerance(Defaults.POWER_TOL, density.bins)
    mask = masses > threshold
    hull = mass_hull(density.edges, masses, threshold)

    expected = invariant_interval(snap)
    slack = float(density.widths.max()) + expected.tolerance
    if abs(hull.lo - expected.lo) > slack or abs(hull.hi - expected.hi) > slack:
        message = (f"density support {hull.to_list()} differs from invariant interval "
                   f"{expected.to_list()} at a={snap.param}")
        if strict:
            raise SupportMismatch(message)
        logger.warning(message)
    return hull, mask


def histogram_density(sample, domain: Interval, bins: Optional[int] = None) -> DensityEstimate:
    """
    Histogram of a sample as a normalized density on equal bins of domain.

    Points outside domain are dropped.
    """
    bins = bins or Defaults.BINS
    edges = bin_edges(domain, bins)
    points = np.asarray(sample, dtype=float)
    counts, _ = np.histogram(points, bins=edges)
    total = counts.sum()
    if total == 0:
        raise ValueError("no sample points inside the domain")
    widths = np.diff(edges)
    values = counts / (total * widths)
    return DensityEstimate(
        edges=edges,
        values=values,
        support=mass_hull(edges, counts.astype(float), 0.0),
        normalization_residual=abs(float(np.sum(values * widths)) - 1.0),
    )
