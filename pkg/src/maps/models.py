"""
Data classes for one-parameter families of piecewise expanding maps.

A family T_a, a in I, is described by a FamilyDescriptor (kind, parameter
interval, kind-specific branch data and the expansion constants lambda,
Lambda, L). Freezing a family at one parameter gives a MapSnapshot, which
carries the breakpoints b_0(a) < ... < b_p(a) and the invariant interval
the dynamics live on.
"""

from bisect import bisect_right
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

if TYPE_CHECKING:
    from .branches import BranchModel


class MapError(Exception):
    """Error while building or evaluating a family."""
    pass


class InvalidSlopes(MapError):
    """Expansion is not strictly greater than one somewhere."""
    pass


class InadmissibleSlopes(InvalidSlopes):
    """Skew tent slopes violate 1/alpha + 1/beta >= 1."""
    pass


class EmptyParameterInterval(MapError):
    """Parameter interval has no positive finite length."""
    pass


class NonMonotoneBranch(MapError):
    """A branch (or the homeomorphism g) is not strictly monotone."""
    pass


class ParamOutOfRange(MapError):
    """Parameter outside the family's interval."""
    pass


class DomainViolation(MapError):
    """Point outside the snapshot's invariant interval."""
    pass


class AtBreakpoint(MapError):
    """Pointwise derivative queried on an interior breakpoint."""
    pass


class FamilyKind(Enum):
    """Concrete family kinds."""
    BETA_LIKE = "beta_like"
    SKEW_TENT = "skew_tent"
    MARKOV_EXAMPLE = "markov_example"
    PIECEWISE_AFFINE = "piecewise_affine"


@dataclass(frozen=True)
class Interval:
    """Closed real interval [lo, hi]."""
    lo: float
    hi: float
    tolerance: float = 0.0  # Detection tolerance for numerically estimated intervals

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float, tol: float = 0.0) -> bool:
        return self.lo - tol <= x <= self.hi + tol

    def to_list(self) -> List[float]:
        return [self.lo, self.hi]

    @classmethod
    def from_list(cls, values: Sequence[float]) -> "Interval":
        if len(values) != 2:
            raise EmptyParameterInterval(f"interval needs two endpoints, got {list(values)}")
        return cls(float(values[0]), float(values[1]))


@dataclass(frozen=True)
class SlopePath:
    """Polynomial slope path s(a) = c_0 + c_1 a + c_2 a^2 + ..."""
    coeffs: Tuple[float, ...]

    def value(self, a):
        result = 0.0
        for c in reversed(self.coeffs):
            result = result * a + c
        return result

    def derivative(self, a):
        result = 0.0
        for power in range(len(self.coeffs) - 1, 0, -1):
            result = result * a + power * self.coeffs[power]
        return result

    @classmethod
    def constant(cls, value: float) -> "SlopePath":
        return cls((float(value),))

    @classmethod
    def linear(cls, c0: float, c1: float) -> "SlopePath":
        return cls((float(c0), float(c1)))

    def to_list(self) -> List[float]:
        return list(self.coeffs)

    @classmethod
    def from_list(cls, coeffs: Sequence[float]) -> "SlopePath":
        if not coeffs:
            raise InvalidSlopes("slope path needs at least one coefficient")
        return cls(tuple(float(c) for c in coeffs))


def quadratic_value(c: float, t):
    """q_c(t) = t + c t (1 - t), increasing on [0, 1] for |c| < 1."""
    return t + c * t * (1.0 - t)


def quadratic_derivative(c: float, t):
    return 1.0 + c - 2.0 * c * t


def quadratic_inverse(c: float, y):
    """Inverse of q_c on [0, 1]; stable form of the smaller quadratic root."""
    disc = (1.0 + c) ** 2 - 4.0 * c * y
    return 2.0 * y / ((1.0 + c) + np.sqrt(np.maximum(disc, 0.0)))


@dataclass(frozen=True)
class Homeomorphism:
    """
    The increasing homeomorphism g of [0, 1] used by the Markov family.

    identity: g(x) = x
    quadratic: g(x) = x + c x (1 - x), |c| < 1
    """
    kind: str = "identity"
    c: float = 0.0

    def __post_init__(self):
        if self.kind not in ("identity", "quadratic"):
            raise NonMonotoneBranch(f"unknown homeomorphism kind: {self.kind}")
        if not abs(self.c) < 1.0:
            raise NonMonotoneBranch(f"g'(x) vanishes for |c| >= 1 (c={self.c})")

    @property
    def curvature(self) -> float:
        return 0.0 if self.kind == "identity" else self.c

    def value(self, x):
        return quadratic_value(self.curvature, x)

    def derivative(self, x):
        return quadratic_derivative(self.curvature, x)

    def inverse(self, y):
        if self.curvature == 0.0:
            return y
        return quadratic_inverse(self.curvature, y)

    @property
    def min_derivative(self) -> float:
        return 1.0 - abs(self.curvature)

    @property
    def max_derivative(self) -> float:
        return 1.0 + abs(self.curvature)

    def to_dict(self) -> Dict[str, Any]:
        if self.kind == "identity":
            return {"kind": "identity"}
        return {"kind": self.kind, "c": self.c}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Homeomorphism":
        return cls(kind=data.get("kind", "identity"), c=float(data.get("c", 0.0)))


@dataclass(frozen=True)
class BaseMapSpec:
    """
    Finite prefix of a base map T: [0, inf) -> [0, 1] with T(b_k) = 0.

    On piece k, [b_k, b_{k+1}), T(x) = h_k q_{c_k}(t) with
    t = (x - b_k) / (b_{k+1} - b_k). Pieces are right-continuous.
    """
    breakpoints: Tuple[float, ...]
    heights: Tuple[float, ...]
    curvatures: Tuple[float, ...]

    def __post_init__(self):
        bp = self.breakpoints
        pieces = len(bp) - 1
        if pieces < 1 or bp[0] != 0.0:
            raise NonMonotoneBranch("base map needs breakpoints starting at 0 with at least one piece")
        if any(right <= left for left, right in zip(bp, bp[1:])):
            raise NonMonotoneBranch("base map breakpoints must increase strictly")
        if len(self.heights) != pieces or len(self.curvatures) != pieces:
            raise NonMonotoneBranch("one height and one curvature per piece required")
        if any(not 0.0 < h <= 1.0 for h in self.heights):
            raise NonMonotoneBranch("piece heights must lie in (0, 1]")
        if any(not abs(c) < 1.0 for c in self.curvatures):
            raise NonMonotoneBranch("piece curvatures must satisfy |c| < 1")

    @property
    def pieces(self) -> int:
        return len(self.breakpoints) - 1

    @classmethod
    def mod_one(cls, pieces: int) -> "BaseMapSpec":
        """T(x) = x mod 1 on [0, pieces)."""
        return cls(
            breakpoints=tuple(float(k) for k in range(pieces + 1)),
            heights=(1.0,) * pieces,
            curvatures=(0.0,) * pieces,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "breakpoints": list(self.breakpoints),
            "heights": list(self.heights),
            "curvatures": list(self.curvatures),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BaseMapSpec":
        if "mod_one" in data:
            return cls.mod_one(int(data["mod_one"]))
        breakpoints = tuple(float(b) for b in data["breakpoints"])
        pieces = len(breakpoints) - 1
        return cls(
            breakpoints=breakpoints,
            heights=tuple(float(h) for h in data.get("heights", [1.0] * pieces)),
            curvatures=tuple(float(c) for c in data.get("curvatures", [0.0] * pieces)),
        )


@dataclass(frozen=True)
class AffineBranchSpec:
    """Branch of a piecewise affine family: end values L(a), R(a), each linear in a."""
    left: Tuple[float, float]
    right: Tuple[float, float]

    def left_value(self, a):
        return self.left[0] + self.left[1] * a

    def right_value(self, a):
        return self.right[0] + self.right[1] * a


@dataclass(frozen=True)
class PiecewiseAffineSpec:
    """Interior breakpoints b_k(a) = p_k + q_k a on [0, 1] and one affine branch per piece."""
    breakpoints: Tuple[Tuple[float, float], ...]
    branches: Tuple[AffineBranchSpec, ...]

    def __post_init__(self):
        if len(self.branches) != len(self.breakpoints) + 1:
            raise NonMonotoneBranch("piecewise affine family needs one more branch than interior breakpoints")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "breakpoints": [list(b) for b in self.breakpoints],
            "branches": [{"left": list(b.left), "right": list(b.right)} for b in self.branches],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "PiecewiseAffineSpec":
        return cls(
            breakpoints=tuple((float(p), float(q)) for p, q in data.get("breakpoints", [])),
            branches=tuple(
                AffineBranchSpec(
                    left=(float(b["left"][0]), float(b["left"][1])),
                    right=(float(b["right"][0]), float(b["right"][1])),
                )
                for b in data["branches"]
            ),
        )


@dataclass(frozen=True)
class FamilyDescriptor:
    """A built family: kind, parameter interval and sampled expansion metadata."""
    family_kind: FamilyKind
    param_interval: Interval
    branch_data: Dict[str, Any]
    lambda_min: float  # lambda: lower bound of |d/dx T_a|
    lambda_max: float  # Lambda: upper bound of |d/dx T_a|
    lip_const: float  # L
    delta0: float  # Minimum breakpoint gap over the interval
    sup_param_partial: float  # sup over (a, x) of |d/da T_a(x)|
    model: "BranchModel" = field(repr=False, compare=False)

    def contains(self, a: float) -> bool:
        return self.param_interval.contains(a)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.family_kind.value,
            "param_interval": self.param_interval.to_list(),
            **self.branch_data,
            "lambda_min": self.lambda_min,
            "lambda_max": self.lambda_max,
            "lip_const": self.lip_const,
            "delta0": self.delta0,
        }


@dataclass(frozen=True)
class MapSnapshot:
    """The map T_a frozen at one parameter."""
    family: FamilyDescriptor = field(repr=False)
    param: float
    breakpoints: Tuple[float, ...]  # Domain endpoints included
    domain: Interval
    lambda_local: float  # inf |d/dx T_a| at this parameter
    lambda_local_max: float

    @property
    def branch_count(self) -> int:
        return len(self.breakpoints) - 1

    @property
    def interior_breakpoints(self) -> Tuple[float, ...]:
        return self.breakpoints[1:-1]

    @property
    def model(self) -> "BranchModel":
        return self.family.model

    def branch_index(self, x: float) -> int:
        """1-based branch index with right-continuity; the right end belongs to the last branch."""
        k = bisect_right(self.breakpoints, x)
        return min(max(k, 1), self.branch_count)

    def branch_indices(self, xs: np.ndarray) -> np.ndarray:
        k = np.searchsorted(np.asarray(self.breakpoints), xs, side="right")
        return np.clip(k, 1, self.branch_count)

    def branch_interval(self, k: int) -> Tuple[float, float]:
        return self.breakpoints[k - 1], self.breakpoints[k]

    def breakpoint_distance(self, x: float) -> float:
        """Distance from x to the nearest interior breakpoint (inf when there is none)."""
        interior = self.interior_breakpoints
        if not interior:
            return float("inf")
        return min(abs(x - b) for b in interior)

    def nearest_interior_breakpoint(self, x: float) -> Optional[int]:
        """Index into breakpoints of the closest interior breakpoint."""
        interior = self.interior_breakpoints
        if not interior:
            return None
        offsets = [abs(x - b) for b in interior]
        return 1 + offsets.index(min(offsets))
