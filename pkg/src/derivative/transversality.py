"""
Transversality of the turning value for skew tent families.

At a0 the threshold is

    Lambda0 = sup_{x in [T(1), 1]} |d/da T_a(x)| / (lambda - 1)

and the family is non-degenerate at a0 once some |D_a T_a^j(0)| with j >= 3
exceeds it. The equivalent series

    sum_i  d/da T_a(T^i(0)) / (T^i)'(1),   (T^i)'(1) = prod_{m=1..i} T'(T^m(0))

is truncated at j_max (or at p - 1 when 0 has period p).
"""

import logging
from typing import Optional, Tuple

import numpy as np

from src.config.settings import Defaults
from src.maps.families import snapshot
from src.maps.models import FamilyDescriptor, FamilyKind
from src.symbolic.models import NotUnimodal

from .models import SlopePartials, TransversalityReport, TurningPointHit
from .orbit import orbit_with_derivative

logger = logging.getLogger(__name__)


def _require_unimodal(family: FamilyDescriptor) -> None:
    if family.family_kind is not FamilyKind.SKEW_TENT:
        raise NotUnimodal(f"transversality needs a skew tent family, got {family.family_kind.value}")


def transversality_report(
    family: FamilyDescriptor,
    a0: float,
    j_max: Optional[int] = None,
    c_tol: Optional[float] = None,
) -> TransversalityReport:
    """
    Lambda0, the first j >= 3 with |D_a T_a^j(0)| > Lambda0, the truncated
    non-degeneracy series and the good-map test at a0.

    Raises:
        NotUnimodal: If the family is not a skew tent family
    """
    _require_unimodal(family)
    j_max = j_max or Defaults.J_MAX
    c_tol = Defaults.C_TOL if c_tol is None else c_tol

    snap = snapshot(family, a0)
    model = snap.model
    alpha, beta = model.slopes(snap.param)
    d_alpha, d_beta = model.slope_derivatives(snap.param)
    lam = min(alpha, beta)
    sup_partial = max(abs(d_alpha) * (beta - 1.0), abs(d_beta))
    lambda0 = sup_partial / (lam - 1.0)

    # x_0 = 0 is the turning point, so d_j = D_a T_a^j(0)
    record = orbit_with_derivative(family, snap.param, 0.0, 0.0, j_max + 1)
    points, derivs, space = record.points, record.param_derivs, record.space_derivs

    period = next((i for i in range(1, j_max + 2) if abs(points[i]) <= c_tol), None)

    j0 = None
    for j in range(3, j_max + 1):
        if period is not None and j > period:
            break
        if not record.reliable(j):
            break
        if abs(derivs[j]) > lambda0:
            j0 = j
            break

    terms = j_max if period is None else min(period - 1, j_max)
    series = 0.0
    for i in range(1, terms + 1):
        x = float(points[i])
        k = snap.branch_index(x)
        series += float(model.partial(snap.param, k, x)) / (space[i + 1] / space[1])
    tail_bound = lambda0 * lam ** (-terms)

    if period is None:
        good = True
    else:
        good = abs(space[period] / space[1]) * lam > 2.0

    report = TransversalityReport(
        a0=snap.param,
        lambda0=lambda0,
        j0_found=j0,
        deriv_at_j0=float(derivs[j0]) if j0 is not None else float("nan"),
        nondegeneracy_sum=series,
        tail_bound=tail_bound,
        good_map=good,
        turning_periodic=period,
        derivatives=[float(d) for d in derivs[: j_max + 1]],
    )
    logger.info("Transversality at a0=%g: Lambda0=%.6g j0=%s period=%s", snap.param, lambda0, j0, period)
    return report


def slope_partials(alpha: float, beta: float, j: int, c_tol: Optional[float] = None) -> SlopePartials:
    """
    d/d alpha and d/d beta of T^j_{alpha,beta}(0), each slope treated as the parameter.

    Raises:
        TurningPointHit: If T^i(0) = 0 for some 1 <= i < j
    """
    if j < 3:
        raise ValueError("slope partials are defined for j >= 3")
    c_tol = Defaults.C_TOL if c_tol is None else c_tol
    x, d_a, d_b, sign = 1.0, 0.0, 0.0, 1
    for i in range(1, j):
        if abs(x) <= c_tol:
            raise TurningPointHit(f"T^{i}(0) = {x!r} for alpha={alpha}, beta={beta}")
        if x < 0.0:
            d_a, d_b = alpha * d_a + x, alpha * d_b
            x = 1.0 + alpha * x
        else:
            d_a, d_b = -beta * d_a, -beta * d_b - x
            x = 1.0 - beta * x
            sign = -sign
    return SlopePartials(j=j, d_alpha=d_a, d_beta=d_b, reference_sign=sign)


def skew_tent_partials(family: FamilyDescriptor, a: float, j: int) -> Tuple[float, float]:
    """(d/d alpha, d/d beta) of T^j(0) at the slopes (alpha(a), beta(a))."""
    _require_unimodal(family)
    alpha, beta = family.model.slopes(a)
    result = slope_partials(alpha, beta, j)
    if not result.signs_agree:
        logger.warning("Slope partial signs disagree at a=%g, j=%d: %s", a, j, result)
    return result.d_alpha, result.d_beta


def growth_rate(alpha: float, beta: float, j_max: int = 40) -> float:
    """Fitted slope of log |d/d beta T^j(0)| against j over 3 <= j <= j_max."""
    js, logs = [], []
    for j in range(3, j_max + 1):
        try:
            value = slope_partials(alpha, beta, j).d_beta
        except TurningPointHit:
            break
        if value != 0.0:
            js.append(j)
            logs.append(np.log(abs(value)))
    if len(js) < 2:
        return float("nan")
    return float(np.polyfit(js, logs, 1)[0])
