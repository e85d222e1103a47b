"""
Data classes for parameter-derivative computations.

OrbitRecord stores x_j(a) = T_a^j(X(a)) together with the parameter
derivatives d_j = D_a x_j(a) and the cumulative space derivatives
S_j = d/dx T_a^j(X(a)).
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np


class DerivativeError(Exception):
    """Error in orbit or derivative computations."""
    pass


class DomainEscape(DerivativeError):
    """Orbit left the invariant interval (construction bug)."""
    pass


class CylinderCrossing(DerivativeError):
    """Perturbed orbits change combinatorics, finite differences are invalid."""
    pass


class TurningPointHit(DerivativeError):
    """Turning-point orbit returns to 0 before the requested step."""
    pass


@dataclass(frozen=True)
class OrbitRecord:
    """Orbit of X(a) with its derivatives."""
    param: float
    points: np.ndarray
    param_derivs: Optional[np.ndarray] = None
    space_derivs: Optional[np.ndarray] = None
    breakpoint_hits: Tuple[int, ...] = ()
    unreliable_from: Optional[int] = None  # First index whose derivatives cross a breakpoint hit

    def __len__(self) -> int:
        return len(self.points)

    @property
    def n(self) -> int:
        return len(self.points) - 1

    @property
    def has_derivatives(self) -> bool:
        return self.param_derivs is not None

    def reliable(self, j: int) -> bool:
        return self.unreliable_from is None or j < self.unreliable_from


@dataclass
class ConditionOneReport:
    """Outcome of the j0 search and the ratio estimate for a sampled map X."""
    j0: Optional[int]
    threshold: float
    min_abs_deriv: float
    c0_estimate: float
    passed: bool
    status: str = "ok"  # "ok" or "no_j0_found"
    sign_constant: bool = False
    rho_estimate: float = float("nan")
    grid: List[float] = field(default_factory=list)
    seed: Optional[int] = None
    exceptional_params: List[float] = field(default_factory=list)
    j_max: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "j0": self.j0,
            "threshold": self.threshold,
            "min_abs_deriv": self.min_abs_deriv,
            "C0_estimate": self.c0_estimate,
            "pass": self.passed,
            "status": self.status,
            "sign_constant": self.sign_constant,
            "rho_estimate": self.rho_estimate,
            "grid_size": len(self.grid),
            "grid_seed": self.seed,
            "grid": self.grid,
            "exceptional_params": self.exceptional_params,
            "j_max": self.j_max,
        }


@dataclass
class TransversalityReport:
    """Threshold search and non-degeneracy data at the turning point."""
    a0: float
    lambda0: float
    j0_found: Optional[int]
    deriv_at_j0: float
    nondegeneracy_sum: float
    tail_bound: float
    good_map: bool
    turning_periodic: Optional[int] = None
    derivatives: List[float] = field(default_factory=list)  # D_a T_a^j(0), j = 0..j_max

    def to_dict(self) -> Dict[str, Any]:
        return {
            "a0": self.a0,
            "Lambda0": self.lambda0,
            "j0": self.j0_found,
            "deriv_at_j0": self.deriv_at_j0,
            "nondegeneracy_sum": self.nondegeneracy_sum,
            "tail_bound": self.tail_bound,
            "good_map": self.good_map,
            "turning_periodic": self.turning_periodic,
        }


@dataclass(frozen=True)
class SlopePartials:
    """d/d alpha and d/d beta of T^j_{alpha,beta}(0) and the sign of (T^{j-1})'(1)."""
    j: int
    d_alpha: float
    d_beta: float
    reference_sign: int

    @property
    def signs_agree(self) -> bool:
        return (
            int(np.sign(self.d_alpha)) == self.reference_sign
            and int(np.sign(self.d_beta)) == self.reference_sign
        )
