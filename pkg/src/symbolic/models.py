"""
Data classes for symbolic dynamics.

Cylinders are the elements of the monotonicity partition P_j(a): maximal
open intervals on which T_a^j is smooth and monotone. Words use 1-based
branch indices. Kneading words use the symbols L, C, R.
"""

from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from src.maps.models import Interval


class SymbolicError(Exception):
    """Error while computing partitions or kneading data."""
    pass


class HitsBreakpoint(SymbolicError):
    """Orbit lands on a breakpoint before the requested depth."""

    def __init__(self, step: int, x: float):
        super().__init__(f"orbit hits a breakpoint at step {step} (x={x!r})")
        self.step = step
        self.x = x


class DepthTooLarge(SymbolicError):
    """Cylinder count exceeds the configured cap."""
    pass


class NotUnimodal(SymbolicError):
    """Operation needs a skew tent family."""
    pass


class UnmatchedCylinder(SymbolicError):
    """Some cylinder of P_j(a1) has no same-word cylinder in P_j(a2)."""

    def __init__(self, report: "ConditionThreeReport"):
        super().__init__(
            f"{report.unmatched} of {report.total} cylinders unmatched at depth {report.depth}"
        )
        self.report = report


class KneadingOrder(Enum):
    """Result of comparing two kneading words."""
    LESS = "less"
    EQUAL_TO_DEPTH = "equal_to_depth"
    GREATER = "greater"


@dataclass(frozen=True)
class Cylinder:
    """One element of P_j(a)."""
    word: Tuple[int, ...]
    domain: Interval
    image: Interval  # T_a^j(domain), ordered
    orientation: int = 1  # +1 if T_a^j is increasing on the domain

    @property
    def depth(self) -> int:
        return len(self.word)

    @property
    def length(self) -> float:
        return self.domain.length

    @property
    def word_key(self) -> str:
        return "-".join(str(s) for s in self.word)

    def contains(self, other: "Cylinder", tol: float = 0.0) -> bool:
        return self.domain.lo - tol <= other.domain.lo and other.domain.hi <= self.domain.hi + tol


@dataclass
class Partition:
    """All cylinders of one depth, sorted left to right."""
    param: float
    depth: int
    cylinders: List[Cylinder]

    @property
    def min_length(self) -> float:
        """delta(a): the shortest cylinder."""
        return min(c.length for c in self.cylinders)

    def __len__(self) -> int:
        return len(self.cylinders)

    def by_word(self) -> Dict[Tuple[int, ...], Cylinder]:
        return {c.word: c for c in self.cylinders}

    def to_rows(self) -> List[Tuple[str, float, float, float, float, int]]:
        return [
            (c.word_key, c.domain.lo, c.domain.hi, c.image.lo, c.image.hi, c.orientation)
            for c in self.cylinders
        ]


@dataclass(frozen=True)
class KneadingWord:
    """Itinerary of the turning value over {L, C, R}."""
    symbols: str
    truncated_at: int

    def __str__(self) -> str:
        return self.symbols

    def __len__(self) -> int:
        return len(self.symbols)

    @property
    def ends_at_turning_point(self) -> bool:
        return self.symbols.endswith("C")


@dataclass
class ConditionThreeReport:
    """Finite-depth check of the cylinder matching between two parameters."""
    depth: int
    a1: float
    a2: float
    total: int
    matched: int
    symbolic_ok: bool
    distance_ok: bool
    size_ok: bool
    image_inclusion: bool
    distance_ratio: float  # max dist(images) / (a2 - a1)
    size_ratio: float  # max |T^j(w)| / |T^j(w')|
    c2_estimate: float
    c2_bound: float
    multiplicity: int = 1
    unmatched_words: List[str] = field(default_factory=list)

    @property
    def unmatched(self) -> int:
        return self.total - self.matched

    @property
    def passed(self) -> bool:
        return self.symbolic_ok and self.distance_ok and self.size_ok

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["unmatched"] = self.unmatched
        data["passed"] = self.passed
        return data


@dataclass
class ConditionThreeSweep:
    """Reports for depths 1..max_depth."""
    a1: float
    a2: float
    reports: List[ConditionThreeReport]
    largest_verified_depth: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "a1": self.a1,
            "a2": self.a2,
            "largest_verified_depth": self.largest_verified_depth,
            "reports": [r.to_dict() for r in self.reports],
        }


@dataclass
class KneadingPath:
    """Kneading words along a parameter grid and the order violations between neighbours."""
    params: List[float]
    words: List[KneadingWord]
    violations: int
    violation_params: List[Tuple[float, float]] = field(default_factory=list)
    first_l_run: Optional[int] = None
