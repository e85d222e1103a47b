"""
Branch models for the four family kinds.

A BranchModel knows, for every parameter a, where the breakpoints sit and how
each branch evaluates: value, space derivative, parameter partial and the
closed-form inverse. Branch indices are 1-based and follow the snapshot
breakpoints from left to right.

All evaluators accept scalars or numpy arrays for x (the branch index is
always a scalar). ``stepper`` returns a plain-float closure for long orbits.
"""

import logging
import math
from abc import ABC, abstractmethod
from bisect import bisect_right
from typing import Any, Callable, Dict, Tuple

import numpy as np

from src.config.settings import Defaults

from .models import (
    BaseMapSpec,
    EmptyParameterInterval,
    FamilyKind,
    Homeomorphism,
    InadmissibleSlopes,
    Interval,
    InvalidSlopes,
    NonMonotoneBranch,
    ParamOutOfRange,
    PiecewiseAffineSpec,
    SlopePath,
    quadratic_derivative,
    quadratic_inverse,
    quadratic_value,
)

logger = logging.getLogger(__name__)

Layout = Tuple[Tuple[float, ...], Interval]


class BranchModel(ABC):
    """
    Abstract base class for family kinds.

    Subclasses hold only plain data so that descriptors pickle cleanly
    into worker processes.
    """

    kind: FamilyKind

    @abstractmethod
    def check_interval(self, interval: Interval) -> None:
        """Raise if the kind cannot be evaluated on this parameter interval."""
        pass

    @abstractmethod
    def layout(self, a: float) -> Layout:
        """Breakpoints (domain endpoints included) and invariant interval at a."""
        pass

    @abstractmethod
    def value(self, a: float, k: int, x):
        pass

    @abstractmethod
    def derivative(self, a: float, k: int, x):
        pass

    @abstractmethod
    def partial(self, a: float, k: int, x):
        """d/da T_a(x) on branch k."""
        pass

    @abstractmethod
    def inverse(self, a: float, k: int, y):
        pass

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        """Kind-specific branch data (the family spec minus kind and interval)."""
        pass

    @property
    def continuous(self) -> bool:
        return False

    def branch_image(self, a: float, k: int, breakpoints: Tuple[float, ...]) -> Tuple[float, float]:
        """Closure values at the left and right end of branch k."""
        left, right = breakpoints[k - 1], breakpoints[k]
        return float(self.value(a, k, left)), float(self.value(a, k, right))

    def stepper(self, a: float) -> Callable[[float], float]:
        """Scalar T_a with right-continuous branch lookup."""
        breakpoints, _ = self.layout(a)
        last = len(breakpoints) - 1
        value = self.value

        def step(x: float) -> float:
            k = bisect_right(breakpoints, x)
            if k > last:
                k = last
            elif k < 1:
                k = 1
            return value(a, k, x)

        return step


class BetaLikeModel(BranchModel):
    """
    T_a(x) = T(a x) for a base map T vanishing at its breakpoints.

    The dynamics live on K(a) = [0, r], the hull of the forward orbit of a
    small interval adjacent to 0.
    """

    kind = FamilyKind.BETA_LIKE

    def __init__(self, base: BaseMapSpec):
        self.base = base

    def check_interval(self, interval: Interval) -> None:
        if interval.lo <= 0.0:
            raise EmptyParameterInterval("beta-like families need positive parameters")
        if interval.hi > self.base.breakpoints[-1]:
            raise ParamOutOfRange(
                f"a up to {interval.hi} needs base pieces beyond {self.base.breakpoints[-1]}"
            )

    def _piece(self, k: int) -> Tuple[float, float, float, float]:
        bp = self.base.breakpoints
        i = k - 1
        return bp[i], bp[i + 1] - bp[i], self.base.heights[i], self.base.curvatures[i]

    def _sup_on(self, a: float, r: float) -> float:
        """sup of T_a over [0, r] using branch closures (q_c is increasing)."""
        sup = 0.0
        bp = self.base.breakpoints
        for i in range(self.base.pieces):
            left = bp[i] / a
            if left >= r:
                break
            right = bp[i + 1] / a
            h, c = self.base.heights[i], self.base.curvatures[i]
            if right <= r:
                top = h
            else:
                t = (r - left) * a / (bp[i + 1] - bp[i])
                top = h * quadratic_value(c, t)
            sup = max(sup, top)
        return sup

    def support_radius(self, a: float) -> float:
        """Right end r of K(a), iterating r <- max(r, sup T_a[0, r]) until stable."""
        r = Defaults.K_SEED
        slope = a * min(
            h * (1.0 - abs(c)) / w
            for w, h, c in zip(np.diff(self.base.breakpoints), self.base.heights, self.base.curvatures)
        )
        growth = math.log(1.0 / r) / math.log(slope) if slope > 1.0 else 0.0
        max_sweeps = Defaults.K_DEPTH + int(math.ceil(growth))
        stable = 0
        for _ in range(max_sweeps):
            updated = min(1.0, max(r, self._sup_on(a, r)))
            if abs(updated - r) <= Defaults.K_STABLE_TOL:
                stable += 1
                if stable >= 2:
                    r = updated
                    break
            else:
                stable = 0
            r = updated
        return r

    def layout(self, a: float) -> Layout:
        r = self.support_radius(a)
        interior = [
            b / a for b in self.base.breakpoints[1:]
            if b / a < r - Defaults.CUT_TOL
        ]
        breakpoints = tuple([0.0] + interior + [r])
        return breakpoints, Interval(0.0, r, Defaults.K_STABLE_TOL)

    def _t(self, a, k, x):
        left_base, width, _, _ = self._piece(k)
        return np.clip((x - left_base / a) * a / width, 0.0, 1.0)

    def value(self, a, k, x):
        _, _, h, c = self._piece(k)
        return h * quadratic_value(c, self._t(a, k, x))

    def derivative(self, a, k, x):
        _, width, h, c = self._piece(k)
        return h * quadratic_derivative(c, self._t(a, k, x)) * a / width

    def partial(self, a, k, x):
        _, width, h, c = self._piece(k)
        return h * quadratic_derivative(c, self._t(a, k, x)) * x / width

    def inverse(self, a, k, y):
        left_base, width, h, c = self._piece(k)
        t = quadratic_inverse(c, np.clip(y / h, 0.0, 1.0))
        return left_base / a + t * width / a

    def stepper(self, a: float) -> Callable[[float], float]:
        breakpoints, _ = self.layout(a)
        last = len(breakpoints) - 1
        pieces = [self._piece(k) for k in range(1, last + 1)]
        lefts = breakpoints

        def step(x: float) -> float:
            k = bisect_right(breakpoints, x)
            if k > last:
                k = last
            elif k < 1:
                k = 1
            _, width, h, c = pieces[k - 1]
            t = (x - lefts[k - 1]) * a / width
            if t < 0.0:
                t = 0.0
            elif t > 1.0:
                t = 1.0
            return h * (t + c * t * (1.0 - t))

        return step

    def to_dict(self) -> Dict[str, Any]:
        return {"base_map": self.base.to_dict()}


class SkewTentModel(BranchModel):
    """T(x) = 1 + alpha x for x <= 0, 1 - beta x for x > 0, on [T(1), 1]."""

    kind = FamilyKind.SKEW_TENT

    def __init__(self, alpha: SlopePath, beta: SlopePath):
        self.alpha = alpha
        self.beta = beta

    @property
    def continuous(self) -> bool:
        return True

    def slopes(self, a: float) -> Tuple[float, float]:
        return float(self.alpha.value(a)), float(self.beta.value(a))

    def slope_derivatives(self, a: float) -> Tuple[float, float]:
        return float(self.alpha.derivative(a)), float(self.beta.derivative(a))

    def check_interval(self, interval: Interval) -> None:
        for a in np.linspace(interval.lo, interval.hi, Defaults.PARAM_SAMPLES):
            alpha, beta = self.slopes(a)
            if alpha <= 1.0 or beta <= 1.0:
                raise InvalidSlopes(f"slopes ({alpha:.6g}, {beta:.6g}) at a={a:.6g} must exceed 1")
            if 1.0 / alpha + 1.0 / beta < 1.0 - 1e-12:
                raise InadmissibleSlopes(
                    f"1/alpha + 1/beta = {1.0 / alpha + 1.0 / beta:.6g} < 1 at a={a:.6g}"
                )

    def layout(self, a: float) -> Layout:
        _, beta = self.slopes(a)
        left = 1.0 - beta
        return (left, 0.0, 1.0), Interval(left, 1.0)

    def value(self, a, k, x):
        alpha, beta = self.slopes(a)
        return 1.0 + alpha * x if k == 1 else 1.0 - beta * x

    def derivative(self, a, k, x):
        alpha, beta = self.slopes(a)
        slope = alpha if k == 1 else -beta
        return slope + 0.0 * np.asarray(x) if np.ndim(x) else slope

    def partial(self, a, k, x):
        d_alpha, d_beta = self.slope_derivatives(a)
        return d_alpha * x if k == 1 else -d_beta * x

    def inverse(self, a, k, y):
        alpha, beta = self.slopes(a)
        return (y - 1.0) / alpha if k == 1 else (1.0 - y) / beta

    def stepper(self, a: float) -> Callable[[float], float]:
        alpha, beta = self.slopes(a)

        def step(x: float) -> float:
            return 1.0 + alpha * x if x < 0.0 else 1.0 - beta * x

        return step

    def to_dict(self) -> Dict[str, Any]:
        return {"alpha": self.alpha.to_list(), "beta": self.beta.to_list()}


class MarkovModel(BranchModel):
    """
    T_a(x) = S_a(g(x)) with S_a(y) = y / a below a and (y - a) / (1 - a) above.

    Both branches are full for every a, so the partition structure never
    changes along the family.
    """

    kind = FamilyKind.MARKOV_EXAMPLE

    def __init__(self, g: Homeomorphism):
        self.g = g

    def check_interval(self, interval: Interval) -> None:
        if interval.lo <= 0.0 or interval.hi >= 1.0:
            raise ParamOutOfRange("Markov example needs a parameter interval inside (0, 1)")

    def layout(self, a: float) -> Layout:
        cut = float(self.g.inverse(a))
        return (0.0, cut, 1.0), Interval(0.0, 1.0)

    def value(self, a, k, x):
        gx = self.g.value(x)
        return gx / a if k == 1 else (gx - a) / (1.0 - a)

    def derivative(self, a, k, x):
        dg = self.g.derivative(x)
        return dg / a if k == 1 else dg / (1.0 - a)

    def partial(self, a, k, x):
        gx = self.g.value(x)
        return -gx / a ** 2 if k == 1 else (gx - 1.0) / (1.0 - a) ** 2

    def inverse(self, a, k, y):
        target = a * y if k == 1 else a + (1.0 - a) * y
        return self.g.inverse(np.clip(target, 0.0, 1.0))

    def stepper(self, a: float) -> Callable[[float], float]:
        c = self.g.curvature
        below, above = 1.0 / a, 1.0 / (1.0 - a)

        def step(x: float) -> float:
            gx = x + c * x * (1.0 - x)
            return gx * below if gx < a else (gx - a) * above

        return step

    def to_dict(self) -> Dict[str, Any]:
        return {"g": self.g.to_dict()}


class PiecewiseAffineModel(BranchModel):
    """Affine branches between breakpoints b_k(a) = p_k + q_k a on [0, 1]."""

    kind = FamilyKind.PIECEWISE_AFFINE

    def __init__(self, spec: PiecewiseAffineSpec):
        self.spec = spec

    def _edges(self, a: float):
        return [0.0] + [p + q * a for p, q in self.spec.breakpoints] + [1.0]

    def _edge_speeds(self):
        return [0.0] + [q for _, q in self.spec.breakpoints] + [0.0]

    def check_interval(self, interval: Interval) -> None:
        for a in (interval.lo, interval.hi):
            edges = self._edges(a)
            if any(right <= left for left, right in zip(edges, edges[1:])):
                raise NonMonotoneBranch(f"breakpoints out of order at a={a:.6g}")
            for branch in self.spec.branches:
                ends = (branch.left_value(a), branch.right_value(a))
                if min(ends) < 0.0 or max(ends) > 1.0:
                    raise ParamOutOfRange(f"branch values {ends} leave [0, 1] at a={a:.6g}")

    def layout(self, a: float) -> Layout:
        return tuple(self._edges(a)), Interval(0.0, 1.0)

    def _geometry(self, a, k):
        edges = self._edges(a)
        branch = self.spec.branches[k - 1]
        return edges[k - 1], edges[k] - edges[k - 1], branch.left_value(a), branch.right_value(a)

    def value(self, a, k, x):
        left, width, lv, rv = self._geometry(a, k)
        return lv + (rv - lv) * (x - left) / width

    def derivative(self, a, k, x):
        _, width, lv, rv = self._geometry(a, k)
        slope = (rv - lv) / width
        return slope + 0.0 * np.asarray(x) if np.ndim(x) else slope

    def partial(self, a, k, x):
        left, width, lv, rv = self._geometry(a, k)
        branch = self.spec.branches[k - 1]
        speeds = self._edge_speeds()
        t = (x - left) / width
        dl, dr = branch.left[1], branch.right[1]
        dt = -(speeds[k - 1] + t * (speeds[k] - speeds[k - 1])) / width
        return dl + (dr - dl) * t + (rv - lv) * dt

    def inverse(self, a, k, y):
        left, width, lv, rv = self._geometry(a, k)
        return left + (y - lv) / (rv - lv) * width

    def to_dict(self) -> Dict[str, Any]:
        return self.spec.to_dict()
