"""
Birkhoff averages F_n(a) = (1/n) sum_{j=1..n} 1_B(x_j(a)) and the bound F_n <= C |B|.

|B| is measured relative to the domain length, so B equal to the whole
domain gives F_n = 1 = 1 * |B|.
"""

import logging
import math
from typing import List, Sequence

import numpy as np
from scipy import signal

from src.config.settings import Defaults
from src.derivative.curves import CurveSpec
from src.derivative.models import OrbitRecord
from src.maps.families import orbit_points, snapshot
from src.maps.models import FamilyDescriptor, Interval

from .empirical import OrbitLike, as_points, require_unfrozen
from .models import EmptyOrbit, TestInterval

logger = logging.getLogger(__name__)


def birkhoff_statistic(orbit: OrbitLike, interval: TestInterval, n: int) -> float:
    """Fraction of x_1..x_n inside the test interval."""
    points = as_points(orbit)
    if n < 1:
        raise EmptyOrbit("F_n needs n >= 1")
    if n > len(points) - 1:
        raise ValueError(f"n={n} exceeds the orbit length {len(points) - 1}")
    return float(np.count_nonzero(interval.indicator(points[1:n + 1]))) / n


def relative_length(interval: TestInterval, domain: Interval) -> float:
    return interval.length / domain.length


def empirical_constant(orbit: OrbitLike, interval: TestInterval, n: int, domain: Interval) -> float:
    """Smallest C with F_n <= C |B|."""
    return birkhoff_statistic(orbit, interval, n) / relative_length(interval, domain)


def limsup_flags(
    orbit: OrbitLike,
    interval: TestInterval,
    c: float,
    n_list: Sequence[int],
    domain: Interval,
) -> List[bool]:
    """F_n <= C |B| for every n in n_list."""
    bound = c * relative_length(interval, domain)
    return [birkhoff_statistic(orbit, interval, n) <= bound for n in n_list]


def limsup_check(
    family: FamilyDescriptor,
    a: float,
    curve: CurveSpec,
    interval: TestInterval,
    c: float,
    n_list: Sequence[int],
) -> List[bool]:
    """
    Follow the orbit of X(a) for max(n_list) steps and test F_n <= C |B|.

    The interval is clipped to the domain at a.

    Raises:
        OrbitCollapsed: If the float orbit freezes on a fixed point
    """
    snap = snapshot(family, a)
    x, _ = curve.evaluate(snap.param)
    x = min(max(x, snap.domain.lo), snap.domain.hi)
    points = orbit_points(snap, x, max(n_list))
    require_unfrozen(points, snap.breakpoint_distance(x) <= Defaults.GUARD_TOL)
    interval = interval.clip(snap.domain)
    flags = limsup_flags(points, interval, c, n_list, snap.domain)
    logger.debug("limsup check at a=%g on %s: %s", a, interval.label, flags)
    return flags


def shift_orbit(base: int, n: int, seed: int) -> OrbitRecord:
    """
    Orbit of a uniformly random point under x -> base * x mod 1.

    Iterating the map in floating point loses one base-digit per step and
    collapses to 0, so the orbit is read off a random digit expansion
    instead: x_j = sum_{i >= 1} d_{j+i} base^{-i}. The sum is evaluated
    right to left as the linear recursion y_t = (d_t + y_{t-1}) / base.
    """
    base = int(base)
    if base < 2:
        raise ValueError("base must be an integer >= 2")
    if n < 0:
        raise ValueError("n must be >= 0")
    guard = math.ceil(53 * math.log(2.0) / math.log(base)) + 2
    rng = np.random.default_rng(seed)
    digits = rng.integers(0, base, size=n + 1 + guard).astype(float)

    tails = signal.lfilter([1.0 / base], [1.0, -1.0 / base], digits[::-1])[::-1]
    points = np.clip(tails[: n + 1], 0.0, np.nextafter(1.0, 0.0))
    return OrbitRecord(param=float(base), points=points)
