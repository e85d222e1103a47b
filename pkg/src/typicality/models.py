"""
Data classes for Birkhoff statistics and typicality sweeps.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from src.maps.models import Interval


class TypicalityError(Exception):
    """Error while comparing an orbit with an invariant measure."""
    pass


class EmptyOrbit(TypicalityError):
    """No orbit points remain after the burn-in."""
    pass


class OrbitCollapsed(TypicalityError):
    """A floating-point orbit froze on a fixed point it cannot reach in exact arithmetic."""
    pass


@dataclass(frozen=True)
class TestInterval:
    """
    Test set B = (q - r, q + r) intersected with the domain.

    An end that was clipped to the domain boundary is closed, the others open.
    """
    __test__ = False  # not a pytest class

    lo: float
    hi: float
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        if not self.hi > self.lo:
            raise TypicalityError(f"test interval ({self.lo}, {self.hi}) has no positive length")

    @classmethod
    def from_center(cls, q: float, r: float, domain: Interval) -> "TestInterval":
        lo, hi = q - r, q + r
        return cls(
            lo=max(lo, domain.lo),
            hi=min(hi, domain.hi),
            lo_closed=lo <= domain.lo,
            hi_closed=hi >= domain.hi,
        )

    @classmethod
    def parse(cls, text: str, domain: Interval) -> "TestInterval":
        """Parse ``lo,hi`` as given on the command line, clipped to domain."""
        lo, hi = (float(v) for v in text.split(","))
        return cls.from_center(0.5 * (lo + hi), 0.5 * (hi - lo), domain)

    def clip(self, domain: Interval) -> "TestInterval":
        """Intersection with domain; ends cut back to the boundary become closed."""
        return TestInterval(
            lo=max(self.lo, domain.lo),
            hi=min(self.hi, domain.hi),
            lo_closed=self.lo_closed or self.lo <= domain.lo,
            hi_closed=self.hi_closed or self.hi >= domain.hi,
        )

    @property
    def length(self) -> float:
        return self.hi - self.lo

    @property
    def label(self) -> str:
        return f"{'[' if self.lo_closed else '('}{self.lo:.6g},{self.hi:.6g}{']' if self.hi_closed else ')'}"

    def indicator(self, points) -> np.ndarray:
        x = np.asarray(points, dtype=float)
        above = x >= self.lo if self.lo_closed else x > self.lo
        below = x <= self.hi if self.hi_closed else x < self.hi
        return above & below


@dataclass
class SweepRow:
    """Outcome at one parameter."""
    param: float
    x_value: float = float("nan")
    n_iterations: int = 0
    kolmogorov_distance: float = float("nan")
    passed: bool = False
    f_n: Dict[str, float] = field(default_factory=dict)
    empirical_c: Dict[str, float] = field(default_factory=dict)
    on_breakpoint: bool = False
    error: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "param": self.param,
            "x_value": self.x_value,
            "n_iterations": self.n_iterations,
            "kolmogorov_distance": self.kolmogorov_distance,
            "pass": self.passed,
            "F_n": dict(self.f_n),
            "empirical_C": dict(self.empirical_c),
            "on_breakpoint": self.on_breakpoint,
            "error": self.error,
        }


@dataclass
class TypicalityReport:
    """Rows in parameter order plus summary statistics."""
    rows: List[SweepRow]
    threshold: float
    n: int
    burn_in: int
    seed: Optional[int] = None
    intervals: List[str] = field(default_factory=list)

    @property
    def pass_fraction(self) -> float:
        if not self.rows:
            return 0.0
        return sum(1 for r in self.rows if r.passed) / len(self.rows)

    @property
    def worst_distance(self) -> float:
        finite = [r.kolmogorov_distance for r in self.rows if not math.isnan(r.kolmogorov_distance)]
        return max(finite) if finite else float("nan")

    @property
    def failures(self) -> List[SweepRow]:
        return [r for r in self.rows if r.error is not None]

    def smallest_constants(self) -> Dict[str, float]:
        """Smallest C per test interval with F_n <= C |B| on every completed row."""
        result: Dict[str, float] = {}
        for label in self.intervals:
            values = [r.empirical_c[label] for r in self.rows if label in r.empirical_c]
            if values:
                result[label] = max(values)
        return result

    def summary(self) -> Dict[str, Any]:
        return {
            "rows": len(self.rows),
            "pass_fraction": self.pass_fraction,
            "worst_distance": self.worst_distance,
            "failed_rows": len(self.failures),
            "threshold": self.threshold,
            "n": self.n,
            "burn_in": self.burn_in,
            "seed": self.seed,
            "smallest_C": self.smallest_constants(),
        }
