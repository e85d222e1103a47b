"""
Orbits with parameter derivatives.

The parameter derivative of x_j(a) = T_a^j(X(a)) follows the recursion

    d_j = d/dx T_a(x_{j-1}) * d_{j-1} + d/da T_a(x_{j-1}),   d_0 = X'(a).

Points within guard_tol of an interior breakpoint are recorded as hits;
derivatives after the first hit are flagged unreliable because the one-sided
derivatives differ. A hit on a continuous turning point with d = 0 and
matching one-sided partials is exact and is not recorded.
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np

from src.config.settings import Defaults
from src.maps.families import orbit_points, snapshot
from src.maps.models import DomainViolation, FamilyDescriptor, MapSnapshot, ParamOutOfRange

from .models import CylinderCrossing, DomainEscape, OrbitRecord

logger = logging.getLogger(__name__)


def _exact_turning_hit(snap: MapSnapshot, x: float, d: float, guard: float) -> bool:
    if d != 0.0 or not snap.model.continuous:
        return False
    idx = snap.nearest_interior_breakpoint(x)
    b = snap.breakpoints[idx]
    model, a = snap.model, snap.param
    values = float(model.value(a, idx, b)), float(model.value(a, idx + 1, b))
    partials = float(model.partial(a, idx, b)), float(model.partial(a, idx + 1, b))
    return abs(values[0] - values[1]) <= guard and abs(partials[0] - partials[1]) <= guard


def orbit_with_derivative(
    family: FamilyDescriptor,
    a: float,
    x_value: float,
    x_deriv: float,
    n: int,
    guard_tol: Optional[float] = None,
) -> OrbitRecord:
    """
    Forward orbit of X(a) with parameter and space derivatives.

    Args:
        family: Family descriptor
        a: Parameter
        x_value: X(a), inside the snapshot domain
        x_deriv: X'(a)
        n: Number of steps
        guard_tol: Breakpoint guard distance (default 1e-11)

    Returns:
        OrbitRecord with n + 1 points

    Raises:
        DomainEscape: If the orbit leaves the invariant interval by more than 1e-9
    """
    snap = snapshot(family, a)
    guard = Defaults.GUARD_TOL if guard_tol is None else guard_tol
    if not snap.domain.contains(x_value, Defaults.DOMAIN_ESCAPE_TOL):
        raise DomainViolation(f"X(a)={x_value} outside {snap.domain.to_list()}")

    model, a = snap.model, snap.param
    lo, hi = snap.domain.lo, snap.domain.hi
    points = np.empty(n + 1)
    param_derivs = np.empty(n + 1)
    space_derivs = np.empty(n + 1)
    hits = []
    unreliable_from = None

    x, d, s = min(max(float(x_value), lo), hi), float(x_deriv), 1.0
    for j in range(n + 1):
        points[j], param_derivs[j], space_derivs[j] = x, d, s
        if j == n:
            break
        if snap.breakpoint_distance(x) <= guard and not _exact_turning_hit(snap, x, d, guard):
            hits.append(j)
            if unreliable_from is None:
                unreliable_from = j + 1
                logger.debug("Orbit at a=%g hits a breakpoint at step %d (x=%r)", a, j, x)
        k = snap.branch_index(x)
        slope = float(model.derivative(a, k, x))
        d = slope * d + float(model.partial(a, k, x))
        s *= slope
        x_next = float(model.value(a, k, x))
        if x_next < lo - Defaults.DOMAIN_ESCAPE_TOL or x_next > hi + Defaults.DOMAIN_ESCAPE_TOL:
            raise DomainEscape(f"x_{j + 1}={x_next} left {snap.domain.to_list()} at a={a}")
        x = min(max(x_next, lo), hi)

    return OrbitRecord(
        param=a,
        points=points,
        param_derivs=param_derivs,
        space_derivs=space_derivs,
        breakpoint_hits=tuple(hits),
        unreliable_from=unreliable_from,
    )


def _perturbed(family: FamilyDescriptor, a: float, x_value: float, x_deriv: float, n: int, h: float):
    lo, hi = family.param_interval.lo, family.param_interval.hi
    if a - h < lo or a + h > hi:
        raise ParamOutOfRange(f"[{a - h}, {a + h}] is not inside [{lo}, {hi}]")
    out = []
    for sign in (-1.0, 1.0):
        snap = snapshot(family, a + sign * h)
        start = min(max(x_value + sign * h * x_deriv, snap.domain.lo), snap.domain.hi)
        points = orbit_points(snap, start, n)
        out.append((snap, points))
    return out


def _itinerary_of(snap: MapSnapshot, points: np.ndarray, n: int):
    return [snap.branch_index(float(x)) for x in points[:n]]


def crossing_free_depth(
    family: FamilyDescriptor,
    a: float,
    x_value: float,
    x_deriv: float,
    n: int,
    h: Optional[float] = None,
) -> int:
    """
    Largest depth m <= n over which the orbits at a - h, a, a + h share one itinerary.

    The depth also stops once the perturbed points drift more than sqrt(h)
    times the domain length from the unperturbed ones, where the central
    difference stops being second-order accurate.
    """
    h = h or Defaults.FD_STEP
    snap = snapshot(family, a)
    base = orbit_points(snap, min(max(x_value, snap.domain.lo), snap.domain.hi), n)
    (snap_m, minus), (snap_p, plus) = _perturbed(family, a, x_value, x_deriv, n, h)
    drift_limit = math.sqrt(h) * snap.domain.length

    depth = 0
    for j in range(n + 1):
        drift = max(abs(plus[j] - base[j]), abs(minus[j] - base[j]))
        if drift > drift_limit:
            break
        depth = j
        if j == n:
            break
        k = snap.branch_index(float(base[j]))
        if snap_m.branch_index(float(minus[j])) != k or snap_p.branch_index(float(plus[j])) != k:
            break
    return depth


def finite_difference_check(
    family: FamilyDescriptor,
    a: float,
    x_value: float,
    x_deriv: float,
    n: int,
    h: Optional[float] = None,
) -> float:
    """
    Max relative error between the recursion and central differences in a.

    X(a +- h) is linearized as X(a) +- h X'(a).

    Returns:
        max over j <= n of |d_j - central difference| / max(|d_j|, 1)

    Raises:
        CylinderCrossing: If the perturbed orbits change itinerary within n steps
    """
    h = h or Defaults.FD_STEP
    record = orbit_with_derivative(family, a, x_value, x_deriv, n)
    (snap_m, minus), (snap_p, plus) = _perturbed(family, a, x_value, x_deriv, n, h)

    snap = snapshot(family, a)
    word = _itinerary_of(snap, record.points, n)
    for j, (k, km, kp) in enumerate(zip(word, _itinerary_of(snap_m, minus, n), _itinerary_of(snap_p, plus, n))):
        if not k == km == kp:
            raise CylinderCrossing(f"itineraries at a={a} +- {h} differ at step {j}")

    central = (plus - minus) / (2.0 * h)
    errors = np.abs(record.param_derivs - central) / np.maximum(np.abs(record.param_derivs), 1.0)
    return float(errors.max())


def derivative_ratio(record: OrbitRecord, j0: int, j: int) -> Tuple[float, float]:
    """|d_j| / |d/dx T^{j-j0}(x_{j0})| and the signed quotient d_j / d/dx T^{j-j0}(x_{j0})."""
    expansion = record.space_derivs[j] / record.space_derivs[j0]
    quotient = record.param_derivs[j] / expansion
    return abs(quotient), quotient
