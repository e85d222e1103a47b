"""
Empirical measures of orbits and their distance to a density.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy import stats

from src.density.models import DensityEstimate
from src.derivative.models import OrbitRecord

from .models import EmptyOrbit, OrbitCollapsed

logger = logging.getLogger(__name__)

OrbitLike = Union[OrbitRecord, np.ndarray]


def as_points(orbit: OrbitLike) -> np.ndarray:
    if isinstance(orbit, OrbitRecord):
        return orbit.points
    return np.asarray(orbit, dtype=float)


def frozen_from(orbit: OrbitLike) -> Optional[int]:
    """First index of a constant tail of at least two points, or None."""
    points = as_points(orbit)
    if len(points) < 2:
        return None
    moving = np.nonzero(points != points[-1])[0]
    start = int(moving[-1]) + 1 if len(moving) else 0
    return start if start < len(points) - 1 else None


def require_unfrozen(orbit: OrbitLike, seeded_on_breakpoint: bool = False) -> None:
    """
    Reject orbits that froze on a fixed point after leaving X(a).

    Maps with integer slopes shift the binary digits of x out one by one, so
    a float orbit reaches an exactly representable fixed point within about
    53 steps whatever the real orbit does. A start that is already fixed, or
    one that sits on a breakpoint, freezes for real and is accepted.

    Raises:
        OrbitCollapsed: If the orbit freezes at step >= 1 from a regular start
    """
    start = frozen_from(orbit)
    if start is None or start == 0 or seeded_on_breakpoint:
        return
    points = as_points(orbit)
    raise OrbitCollapsed(
        f"orbit froze at x={points[start]!r} from step {start} of {len(points) - 1}; "
        "float precision is exhausted"
    )


@dataclass(frozen=True)
class EmpiricalMeasure:
    """Sorted sample of orbit points with a right-continuous CDF."""
    sample: np.ndarray

    @property
    def size(self) -> int:
        return len(self.sample)

    def cdf(self, x):
        return np.searchsorted(self.sample, x, side="right") / len(self.sample)


def empirical_measure(orbit: OrbitLike, burn_in: int = 0) -> EmpiricalMeasure:
    """
    Empirical measure of x_j for burn_in <= j <= n.

    Raises:
        EmptyOrbit: If burn_in leaves no points
    """
    points = as_points(orbit)
    if burn_in < 0:
        raise ValueError("burn_in must be >= 0")
    if burn_in >= len(points):
        raise EmptyOrbit(f"burn_in={burn_in} leaves no points of an orbit of length {len(points)}")
    return EmpiricalMeasure(np.sort(points[burn_in:]))


def kolmogorov_distance(measure: EmpiricalMeasure, density: DensityEstimate) -> float:
    """
    sup |F_emp - F_density| over the sample points and the bin edges.

    The sample-point part is the one-sample Kolmogorov-Smirnov statistic
    against the piecewise-linear CDF of the density.
    """
    statistic = stats.kstest(measure.sample, density.cdf).statistic
    edges = density.edges
    at_edges = np.max(np.abs(measure.cdf(edges) - density.cdf(edges)))
    return float(min(1.0, max(statistic, at_edges)))
