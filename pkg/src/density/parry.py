"""
Closed-form invariant density of the pure beta transformation x -> beta x mod 1.

    phi(x) ~ sum_{n >= 0, x < T^n(1)} beta^{-n}

Used as an independent oracle for the Ulam estimates of the beta-like family
with base map x mod 1.
"""

import logging
import math
from typing import List, Optional, Tuple, Union

import numpy as np

from src.config.settings import Defaults
from src.maps.models import Interval

from .models import DensityEstimate
from .ulam import bin_edges

logger = logging.getLogger(__name__)


def parry_terms(beta: float, cutoff: Optional[float] = None, snap: Optional[float] = None) -> List[Tuple[float, float]]:
    """
    Pairs (T^n(1), beta^{-n}) until beta^{-n} < cutoff or the orbit of 1 reaches 0.

    Orbit points within snap of an integer are rounded onto it, so
    beta = 2 or the golden ratio terminate exactly.
    """
    if beta <= 1.0:
        raise ValueError("beta must exceed 1")
    cutoff = Defaults.PARRY_CUTOFF if cutoff is None else cutoff
    snap = Defaults.PARRY_SNAP if snap is None else snap

    terms = []
    x, weight = 1.0, 1.0
    while weight >= cutoff and x > 0.0:
        terms.append((x, weight))
        x = beta * x
        nearest = round(x)
        if abs(x - nearest) <= snap:
            x = float(nearest)
        x -= math.floor(x)
        weight /= beta
    return terms


def parry_density_oracle(beta: float, grid: Union[int, np.ndarray]) -> DensityEstimate:
    """
    Parry density averaged over the bins of grid.

    Args:
        beta: Slope, > 1
        grid: Bin count over [0, 1] or explicit increasing edges

    Returns:
        DensityEstimate with exact bin averages of the normalized series
    """
    edges = bin_edges(Interval(0.0, 1.0), grid) if np.isscalar(grid) else np.asarray(grid, dtype=float)
    widths = np.diff(edges)
    values = np.zeros(len(widths))
    for cut, weight in parry_terms(beta):
        values += weight * np.clip((cut - edges[:-1]) / widths, 0.0, 1.0)

    values /= np.sum(values * widths)
    logger.debug("Parry density for beta=%g on %d bins", beta, len(widths))
    return DensityEstimate(
        edges=edges,
        values=values,
        support=Interval(float(edges[0]), float(edges[-1])),
        normalization_residual=abs(float(np.sum(values * widths)) - 1.0),
        param=beta,
    )
