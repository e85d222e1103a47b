"""
Data classes for invariant density estimates.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from src.maps.models import Interval


class DensityError(Exception):
    """Error while estimating an invariant density."""
    pass


class BinsTooSmall(DensityError):
    """Fewer than two bins requested."""
    pass


class NoConvergence(DensityError):
    """Power iteration did not reach the tolerance."""

    def __init__(self, max_iter: int, change: float):
        super().__init__(f"power iteration not converged after {max_iter} iterations (last change {change:.3g})")
        self.max_iter = max_iter
        self.change = change


class ExpansionTooWeak(DensityError):
    """lambda^tau does not exceed 3."""
    pass


class SupportMismatch(DensityError):
    """Density support and orbit-closure interval disagree by more than one bin."""
    pass


@dataclass
class DensityEstimate:
    """
    Piecewise-constant density on uniform bins.

    values[i] is the mass of bin i divided by its width, so the estimate
    integrates to one over edges[0]..edges[-1].
    """
    edges: np.ndarray
    values: np.ndarray
    support: Interval
    normalization_residual: float
    stationarity_residual: float = float("nan")
    iterations: int = 0
    param: Optional[float] = None

    @property
    def bins(self) -> int:
        return len(self.values)

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    @property
    def masses(self) -> np.ndarray:
        return self.values * self.widths

    @property
    def domain(self) -> Interval:
        return Interval(float(self.edges[0]), float(self.edges[-1]))

    def cdf(self, x):
        """Distribution function of the density, linear inside each bin."""
        cumulative = np.concatenate([[0.0], np.cumsum(self.masses)])
        return np.interp(x, self.edges, cumulative, left=0.0, right=cumulative[-1])

    def support_bins(self) -> Tuple[int, int]:
        """First and last bin index of the support hull."""
        lo = int(np.searchsorted(self.edges, self.support.lo, side="left"))
        hi = int(np.searchsorted(self.edges, self.support.hi, side="left")) - 1
        return lo, max(lo, hi)

    def l1_distance(self, other: "DensityEstimate") -> float:
        """L1 distance between two estimates on identical bins."""
        if len(other.values) != len(self.values) or not np.allclose(other.edges, self.edges):
            raise DensityError("L1 distance needs identical bin edges")
        return float(np.sum(np.abs(self.values - other.values) * self.widths))

    def to_rows(self) -> List[Tuple[float, float, float]]:
        return list(zip(self.edges[:-1].tolist(), self.edges[1:].tolist(), self.values.tolist()))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "param": self.param,
            "bins": self.bins,
            "domain": self.domain.to_list(),
            "support": self.support.to_list(),
            "normalization_residual": self.normalization_residual,
            "stationarity_residual": self.stationarity_residual,
            "iterations": self.iterations,
        }


@dataclass
class VariationReport:
    """Variation constant, lower-bound window and two-sided bounds of a density estimate."""
    tau: int
    delta_a: float
    cv: float
    empirical_variation: float
    lower_interval: Optional[Interval]
    lower_bound_ok: bool
    phi_inf: float = float("nan")
    phi_sup: float = float("nan")

    @property
    def c1_estimate(self) -> float:
        if self.phi_inf <= 0.0:
            return float("inf")
        return max(self.phi_sup, 1.0 / self.phi_inf)

    @property
    def variation_within_bound(self) -> bool:
        return self.empirical_variation <= self.cv

    def to_dict(self) -> Dict[str, Any]:
        return {
            "tau": self.tau,
            "delta_a": self.delta_a,
            "Cv": self.cv,
            "empirical_variation": self.empirical_variation,
            "lower_interval": self.lower_interval.to_list() if self.lower_interval else None,
            "lower_bound_ok": self.lower_bound_ok,
            "phi_inf": self.phi_inf,
            "phi_sup": self.phi_sup,
            "C1_estimate": self.c1_estimate,
        }
