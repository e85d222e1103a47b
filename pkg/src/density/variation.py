"""
Two-sided bounds and bounded variation of invariant densities.

After rescaling the domain to unit length, any density phi with
var(phi) <= Cv and integral one satisfies phi >= 1 / (3 Cv) on some interval
of length 1 / (2 Cv), where

    Cv = 3 / (delta(a) (lambda^tau - 3))

with tau the smallest iterate for which lambda^tau > 3 and delta(a) the
shortest cylinder of depth tau.
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np

from src.maps.models import Interval, MapSnapshot
from src.symbolic import cylinders

from .models import DensityEstimate, ExpansionTooWeak, VariationReport

logger = logging.getLogger(__name__)

_MAX_TAU = 64


def minimal_tau(expansion: float) -> int:
    """Smallest tau with expansion^tau > 3."""
    if expansion <= 1.0:
        raise ExpansionTooWeak(f"expansion {expansion:.6g} is not > 1")
    tau = max(1, math.ceil(math.log(3.0) / math.log(expansion)))
    while expansion ** tau <= 3.0:
        tau += 1
    if tau > _MAX_TAU:
        raise ExpansionTooWeak(f"expansion {expansion:.6g} needs tau={tau} > {_MAX_TAU}")
    return tau


def variation_constant(delta: float, expansion: float, tau: int) -> float:
    """Cv = 3 / (delta (lambda^tau - 3))."""
    grown = expansion ** tau
    if grown <= 3.0:
        raise ExpansionTooWeak(f"lambda^tau = {grown:.6g} <= 3 for tau={tau}")
    return 3.0 / (delta * (grown - 3.0))


def total_variation(values: np.ndarray) -> float:
    return float(np.sum(np.abs(np.diff(values))))


def lower_bound_window(edges: np.ndarray, unit_values: np.ndarray, cv: float) -> Optional[Interval]:
    """
    First run of bins of normalized length >= 1 / (2 Cv) on which phi >= 1 / (3 Cv).

    unit_values is the density with respect to the rescaled unit domain.
    """
    bins = len(unit_values)
    span = max(1, math.ceil(bins / (2.0 * cv) - 1e-9))
    if span > bins:
        return None
    minima = np.lib.stride_tricks.sliding_window_view(unit_values, span).min(axis=1)
    good = np.nonzero(minima >= 1.0 / (3.0 * cv))[0]
    if not len(good):
        return None
    start = int(good[0])
    return Interval(float(edges[start]), float(edges[start + span]))


def density_bounds_and_variation(
    snap: MapSnapshot,
    density: DensityEstimate,
    tau: Optional[int] = None,
) -> Tuple[VariationReport, float, float]:
    """
    Check the density against the variation bound and the two-sided bounds.

    Args:
        snap: Frozen map the density belongs to
        density: Converged estimate on the snapshot domain
        tau: Iterate depth; the smallest tau with lambda^tau > 3 when None

    Returns:
        (report, inf of phi on the support, sup of phi)

    Raises:
        ExpansionTooWeak: If lambda^tau <= 3
    """
    expansion = snap.lambda_local
    tau = minimal_tau(expansion) if tau is None else tau
    length = snap.domain.length

    partition = cylinders(snap, tau)
    delta = partition.min_length / length
    cv = variation_constant(delta, expansion, tau)

    unit_values = density.values * length
    variation = total_variation(unit_values)
    window = lower_bound_window(density.edges, unit_values, cv)

    first, last = density.support_bins()
    on_support = density.values[first:last + 1]
    phi_inf = float(on_support.min())
    phi_sup = float(density.values.max())

    report = VariationReport(
        tau=tau,
        delta_a=delta,
        cv=cv,
        empirical_variation=variation,
        lower_interval=window,
        lower_bound_ok=window is not None,
        phi_inf=phi_inf,
        phi_sup=phi_sup,
    )
    if report.variation_within_bound and not report.lower_bound_ok:
        logger.warning("a=%g: variation %.6g <= Cv=%.6g but no lower-bound window found",
                       snap.param, variation, cv)
    logger.info("a=%g: tau=%d delta=%.6g Cv=%.6g var=%.6g C1~%.6g",
                snap.param, tau, delta, cv, variation, report.c1_estimate)
    return report, phi_inf, phi_sup
