"""
Sufficient criterion for the derivative comparability condition.

If on every grid parameter the orbit derivative |d_{j0}| exceeds

    sup |d/da T_a| / (lambda - 1) + 2L

then d_j stays comparable to d/dx T_a^{j-j0}(x_{j0}) for all later j. The
check searches the smallest such j0 and reports the empirical comparability
constant C0 over j0 < j <= j_max. Skew tent families replace 2L by a small
margin kappa since their turning point does not move with a.
"""

import logging
from functools import partial
from typing import List, Optional, Tuple

import numpy as np

from src.config.settings import Defaults
from src.config.workers import ordered_map
from src.maps.models import FamilyDescriptor, FamilyKind

from .curves import CurveSpec
from .models import ConditionOneReport, OrbitRecord
from .orbit import derivative_ratio, orbit_with_derivative

logger = logging.getLogger(__name__)


def _margin(family: FamilyDescriptor) -> float:
    if family.family_kind is FamilyKind.SKEW_TENT:
        return Defaults.KAPPA
    return 2.0 * family.lip_const


def condition_one_threshold(family: FamilyDescriptor) -> float:
    """sup|d/da T_a| / (lambda - 1) + 2L (kappa instead of 2L for skew tents)."""
    return family.sup_param_partial / (family.lambda_min - 1.0) + _margin(family)


def parameter_grid(family: FamilyDescriptor, grid_size: int, seed: Optional[int] = None) -> np.ndarray:
    """Evenly spaced grid over I, or a sorted seeded uniform sample when seed is given."""
    if grid_size < 2:
        raise ValueError("grid_size must be >= 2")
    lo, hi = family.param_interval.lo, family.param_interval.hi
    if seed is None:
        return np.linspace(lo, hi, grid_size)
    rng = np.random.default_rng(seed)
    return np.sort(rng.uniform(lo, hi, grid_size))


def _orbit_task(family: FamilyDescriptor, j_max: int, item: Tuple[float, float, float]) -> OrbitRecord:
    a, value, deriv = item
    return orbit_with_derivative(family, a, value, deriv, j_max)


def check_condition_one(
    family: FamilyDescriptor,
    curve: CurveSpec,
    j_max: Optional[int] = None,
    grid_size: Optional[int] = None,
    seed: Optional[int] = None,
    workers: int = 1,
) -> ConditionOneReport:
    """
    Search j0 and estimate C0 for X given by curve.

    Parameters whose orbit hits a breakpoint within j_max steps are excluded
    and listed as exceptional.

    Args:
        family: Family descriptor
        curve: The map a -> X(a)
        j_max: Deepest iterate examined
        grid_size: Number of grid parameters (>= 2)
        seed: Seed for a random grid; evenly spaced when None
        workers: Worker processes for the per-parameter orbits

    Returns:
        ConditionOneReport; status "no_j0_found" with pass false when no j0 exists
    """
    j_max = j_max or Defaults.J_MAX
    grid_size = grid_size or Defaults.CHECK_GRID
    params = parameter_grid(family, grid_size, seed)
    values, derivs = curve.sample(params)
    threshold = condition_one_threshold(family)

    records: List[OrbitRecord] = ordered_map(
        partial(_orbit_task, family, j_max),
        list(zip(params.tolist(), values.tolist(), derivs.tolist())),
        workers,
    )

    usable = [r for r in records if r.reliable(j_max)]
    exceptional = [r.param for r in records if not r.reliable(j_max)]
    if exceptional:
        logger.warning("%d grid parameters hit a breakpoint within %d steps", len(exceptional), j_max)

    if not usable:
        return ConditionOneReport(
            j0=None, threshold=threshold, min_abs_deriv=0.0, c0_estimate=float("inf"),
            passed=False, status="no_j0_found", grid=params.tolist(),
            exceptional_params=exceptional, j_max=j_max, seed=seed,
        )

    magnitudes = np.abs(np.vstack([r.param_derivs for r in usable]))  # (grid, j)
    floor = magnitudes.min(axis=0)
    above = np.nonzero(floor > threshold)[0]

    if not len(above):
        best = int(np.argmax(floor))
        logger.info("No j0 <= %d found: best min|d_j| = %.6g at j=%d, threshold %.6g",
                    j_max, floor[best], best, threshold)
        return ConditionOneReport(
            j0=None, threshold=threshold, min_abs_deriv=float(floor[best]),
            c0_estimate=float("inf"), passed=False, status="no_j0_found",
            grid=params.tolist(), exceptional_params=exceptional, j_max=j_max, seed=seed,
        )

    j0 = int(above[0])
    c0 = 1.0
    rho = -np.inf
    sign_constant = True
    margin = _margin(family)
    for record in usable:
        signs = set()
        for j in range(j0, j_max + 1):
            ratio, quotient = derivative_ratio(record, j0, j)
            if j > j0:
                c0 = max(c0, ratio, 1.0 / ratio if ratio > 0.0 else np.inf)
                signs.add(int(np.sign(quotient)))
            floor_j = margin * family.lambda_min ** (j - j0)
            rho = max(rho, 1.0 - abs(record.param_derivs[j]) / floor_j)
        if len(signs) > 1 or 0 in signs:
            sign_constant = False

    min_abs = float(floor[j0])
    report = ConditionOneReport(
        j0=j0,
        threshold=threshold,
        min_abs_deriv=min_abs,
        c0_estimate=float(c0),
        passed=min_abs > threshold,
        sign_constant=sign_constant,
        rho_estimate=float(rho),
        grid=params.tolist(),
        exceptional_params=exceptional,
        j_max=j_max,
        seed=seed,
    )
    logger.info("Condition I: j0=%d, min|d_j0|=%.6g > %.6g, C0~%.6g", j0, min_abs, threshold, c0)
    return report
