"""
Family construction and pointwise evaluation.

build_family samples the family over a grid in (a, x) to obtain the
expansion bounds lambda <= |d/dx T_a| <= Lambda, the Lipschitz constant L
and the minimum breakpoint gap delta_0. The bounds are a sampling check,
not a proof.

snapshot freezes the family at one parameter; evaluate, space_derivative,
param_partial and invariant_interval query a snapshot. Discontinuous maps
are right-continuous and the right end of the domain belongs to the last
branch.
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np

from src.config.settings import Defaults

from .branches import (
    BetaLikeModel,
    BranchModel,
    MarkovModel,
    PiecewiseAffineModel,
    SkewTentModel,
)
from .models import (
    AtBreakpoint,
    BaseMapSpec,
    DomainViolation,
    EmptyParameterInterval,
    FamilyDescriptor,
    Homeomorphism,
    Interval,
    InvalidSlopes,
    MapSnapshot,
    NonMonotoneBranch,
    ParamOutOfRange,
    PiecewiseAffineSpec,
    SlopePath,
)

logger = logging.getLogger(__name__)

_PARAM_TOL = 1e-12
_LOCAL_SAMPLES = 65


def _branch_samples(left: float, right: float, count: int) -> np.ndarray:
    return np.linspace(left, right, max(count, 2))


def _derivatives_at(model: BranchModel, a: float, breakpoints, xs: np.ndarray):
    """Branch indices and d/dx T_a at the points xs (right-continuous lookup)."""
    ks = np.clip(np.searchsorted(np.asarray(breakpoints), xs, side="right"), 1, len(breakpoints) - 1)
    derivs = np.empty_like(xs)
    for k in np.unique(ks):
        mask = ks == k
        derivs[mask] = model.derivative(a, int(k), xs[mask])
    return ks, derivs


def build_family(
    model: BranchModel,
    param_interval: Interval,
    grid_points: Optional[int] = None,
    param_samples: Optional[int] = None,
) -> FamilyDescriptor:
    """
    Build a family descriptor by sampling the model over (a, x).

    Args:
        model: Kind-specific branch model
        param_interval: Closed parameter interval I
        grid_points: x samples per parameter, shared by the branches
        param_samples: Number of parameters sampled across I

    Returns:
        FamilyDescriptor with lambda_min, lambda_max, lip_const and delta0

    Raises:
        EmptyParameterInterval: If I has no positive finite length
        InvalidSlopes: If the sampled expansion is <= 1 somewhere
        NonMonotoneBranch: If a branch derivative changes sign or vanishes
    """
    lo, hi = param_interval.lo, param_interval.hi
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo:
        raise EmptyParameterInterval(f"parameter interval [{lo}, {hi}] has no positive finite length")

    model.check_interval(param_interval)

    grid_points = grid_points or Defaults.GRID_POINTS
    param_samples = param_samples or Defaults.PARAM_SAMPLES
    params = np.linspace(lo, hi, max(param_samples, 2))

    lam_min, lam_max = math.inf, 0.0
    x_lipschitz = 0.0
    a_lipschitz = 0.0
    speed = 0.0
    sup_partial = 0.0
    delta0 = math.inf

    previous = None  # (a, interior breakpoints, xs, branch indices, derivatives)
    for a in params:
        a = float(a)
        breakpoints, domain = model.layout(a)
        gaps = np.diff(breakpoints)
        delta0 = min(delta0, float(gaps.min()))
        per_branch = max(grid_points // len(gaps), 2)

        for k in range(1, len(breakpoints)):
            xs = _branch_samples(breakpoints[k - 1], breakpoints[k], per_branch)
            derivs = np.asarray(model.derivative(a, k, xs), dtype=float)
            if not (np.all(derivs > 0.0) or np.all(derivs < 0.0)):
                raise NonMonotoneBranch(f"branch {k} at a={a:.6g} is not strictly monotone")
            magnitude = np.abs(derivs)
            lam_min = min(lam_min, float(magnitude.min()))
            lam_max = max(lam_max, float(magnitude.max()))
            steps = np.diff(xs)
            if np.all(steps > 0.0):
                x_lipschitz = max(x_lipschitz, float(np.max(np.abs(np.diff(derivs)) / steps)))
            partials = np.asarray(model.partial(a, k, xs), dtype=float)
            sup_partial = max(sup_partial, float(np.max(np.abs(partials))))

        interior = np.asarray(breakpoints[1:-1])
        if previous is not None:
            prev_a, prev_breakpoints, prev_domain = previous
            da = a - prev_a
            prev_interior = np.asarray(prev_breakpoints[1:-1])
            if len(prev_interior) == len(interior) and len(interior):
                speed = max(speed, float(np.max(np.abs(interior - prev_interior)) / da))

            # a-Lipschitz constant of d/dx T_a on the common part of both domains
            common_lo = max(domain.lo, prev_domain.lo)
            common_hi = min(domain.hi, prev_domain.hi)
            if common_hi > common_lo:
                xs = np.linspace(common_lo, common_hi, per_branch)
                ks, derivs = _derivatives_at(model, a, breakpoints, xs)
                prev_ks, prev_derivs = _derivatives_at(model, prev_a, prev_breakpoints, xs)
                same = ks == prev_ks
                if np.any(same):
                    a_lipschitz = max(
                        a_lipschitz,
                        float(np.max(np.abs(derivs[same] - prev_derivs[same])) / da),
                    )
        previous = (a, breakpoints, domain)

    if lam_min <= 1.0:
        raise InvalidSlopes(f"sampled expansion lambda={lam_min:.6g} is not > 1")

    lip_const = max(x_lipschitz, sup_partial, a_lipschitz, speed, Defaults.MIN_LIPSCHITZ)
    descriptor = FamilyDescriptor(
        family_kind=model.kind,
        param_interval=param_interval,
        branch_data=model.to_dict(),
        lambda_min=lam_min,
        lambda_max=lam_max,
        lip_const=lip_const,
        delta0=delta0,
        sup_param_partial=sup_partial,
        model=model,
    )
    logger.info(
        "Built %s family on [%g, %g]: lambda=%.6g Lambda=%.6g L=%.6g",
        model.kind.value, lo, hi, lam_min, lam_max, lip_const,
    )
    return descriptor


def beta_like_family(base: BaseMapSpec, interval: Tuple[float, float], **kwargs) -> FamilyDescriptor:
    """T_a(x) = T(a x) for the base map T."""
    return build_family(BetaLikeModel(base), Interval(*interval), **kwargs)


def skew_tent_family(alpha: SlopePath, beta: SlopePath, interval: Tuple[float, float], **kwargs) -> FamilyDescriptor:
    """Skew tent maps along the slope paths (alpha(a), beta(a))."""
    return build_family(SkewTentModel(alpha, beta), Interval(*interval), **kwargs)


def markov_family(g: Homeomorphism, interval: Tuple[float, float], **kwargs) -> FamilyDescriptor:
    """T_a = S_a o g with S_a the two full affine branches split at a."""
    return build_family(MarkovModel(g), Interval(*interval), **kwargs)


def piecewise_affine_family(spec: PiecewiseAffineSpec, interval: Tuple[float, float], **kwargs) -> FamilyDescriptor:
    return build_family(PiecewiseAffineModel(spec), Interval(*interval), **kwargs)


def snapshot(family: FamilyDescriptor, a: float) -> MapSnapshot:
    """
    Freeze the family at parameter a.

    Raises:
        ParamOutOfRange: If a is outside the family's interval
    """
    if not family.param_interval.contains(a, _PARAM_TOL):
        raise ParamOutOfRange(f"a={a} outside {family.param_interval.to_list()}")
    a = float(a)
    model = family.model
    breakpoints, domain = model.layout(a)

    lam_lo, lam_hi = math.inf, 0.0
    for k in range(1, len(breakpoints)):
        xs = _branch_samples(breakpoints[k - 1], breakpoints[k], _LOCAL_SAMPLES)
        magnitude = np.abs(np.asarray(model.derivative(a, k, xs), dtype=float))
        lam_lo = min(lam_lo, float(magnitude.min()))
        lam_hi = max(lam_hi, float(magnitude.max()))

    return MapSnapshot(
        family=family,
        param=a,
        breakpoints=tuple(float(b) for b in breakpoints),
        domain=domain,
        lambda_local=lam_lo,
        lambda_local_max=lam_hi,
    )


def _check_domain(snap: MapSnapshot, x: float) -> None:
    tol = _PARAM_TOL * max(1.0, snap.domain.length)
    if not snap.domain.contains(x, tol):
        raise DomainViolation(f"x={x} outside {snap.domain.to_list()} at a={snap.param}")


def _check_interior(snap: MapSnapshot, x: float) -> None:
    if snap.breakpoint_distance(x) <= Defaults.AT_BREAKPOINT_TOL:
        raise AtBreakpoint(f"x={x} is a breakpoint of T_a at a={snap.param}")


def evaluate(snap: MapSnapshot, x: float) -> float:
    """
    Evaluate T_a(x), taking the right limit at interior breakpoints.

    Raises:
        DomainViolation: If x is outside the snapshot domain
    """
    _check_domain(snap, x)
    k = snap.branch_index(x)
    return float(snap.model.value(snap.param, k, x))


def space_derivative(snap: MapSnapshot, x: float) -> float:
    """
    d/dx T_a(x) inside a branch.

    Raises:
        AtBreakpoint: If x is an interior breakpoint (nudge to pick a side)
    """
    _check_domain(snap, x)
    _check_interior(snap, x)
    k = snap.branch_index(x)
    return float(snap.model.derivative(snap.param, k, x))


def param_partial(family: FamilyDescriptor, a: float, x: float) -> float:
    """
    d/da T_a(x) at fixed x.

    Raises:
        AtBreakpoint: If x is a breakpoint of T_a
    """
    snap = snapshot(family, a)
    _check_domain(snap, x)
    _check_interior(snap, x)
    k = snap.branch_index(x)
    return float(snap.model.partial(snap.param, k, x))


def invariant_interval(snap: MapSnapshot) -> Interval:
    """
    Interval carrying the dynamics.

    Skew tents use [T_a(1), 1], the Markov and affine kinds [0, 1], and
    beta-like families the orbit-closure estimate of K(a) whose tolerance
    field records the detection tolerance.
    """
    return snap.domain


def orbit_points(snap: MapSnapshot, x: float, n: int) -> np.ndarray:
    """
    Forward orbit x, T_a(x), ..., T_a^n(x) without derivatives.

    Points are clipped back into the domain to absorb rounding at its ends.
    """
    _check_domain(snap, x)
    step = snap.model.stepper(snap.param)
    lo, hi = snap.domain.lo, snap.domain.hi
    out = np.empty(n + 1)
    x = float(x)
    for j in range(n + 1):
        out[j] = x
        x = step(x)
        if x < lo:
            x = lo
        elif x > hi:
            x = hi
    return out
