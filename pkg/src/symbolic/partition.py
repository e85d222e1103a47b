"""
Monotonicity partitions and itineraries.

Cylinders are refined level by level: the image of each depth-j cylinder is
cut at the interior breakpoints it contains, and each cut point is pulled
back through the branch inverses along the cylinder's word. Domains of
children therefore tile their parent exactly.
"""

import logging
from typing import Iterator, List, Optional, Tuple

from src.config.settings import Defaults
from src.maps.families import evaluate
from src.maps.models import Interval, MapSnapshot

from .models import Cylinder, DepthTooLarge, HitsBreakpoint, Partition

logger = logging.getLogger(__name__)


def itinerary(snap: MapSnapshot, x: float, depth: int, guard_tol: Optional[float] = None) -> Tuple[int, ...]:
    """
    Branch indices of x, T_a(x), ..., T_a^{depth-1}(x).

    Args:
        snap: Map snapshot
        x: Starting point in the snapshot domain
        depth: Word length (>= 1)
        guard_tol: Distance to an interior breakpoint that counts as a hit

    Returns:
        Tuple of 1-based branch indices

    Raises:
        HitsBreakpoint: If some T_a^i(x), i < depth, sits on a breakpoint
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    guard = Defaults.GUARD_TOL if guard_tol is None else guard_tol
    word = []
    for step in range(depth):
        if snap.breakpoint_distance(x) <= guard:
            raise HitsBreakpoint(step, x)
        word.append(snap.branch_index(x))
        if step + 1 < depth:
            x = evaluate(snap, x)
    return tuple(word)


def _pull_back(snap: MapSnapshot, word: Tuple[int, ...], y: float) -> float:
    """Preimage of y under T_a^j restricted to the cylinder with this word."""
    model, a = snap.model, snap.param
    for k in reversed(word):
        y = float(model.inverse(a, k, y))
    return y


def _refine(snap: MapSnapshot, parent: Cylinder) -> List[Cylinder]:
    model, a = snap.model, snap.param
    breakpoints = snap.breakpoints
    y0, y1 = parent.image.lo, parent.image.hi
    tol = Defaults.CUT_TOL * max(1.0, snap.domain.length)
    cuts = [b for b in snap.interior_breakpoints if y0 + tol < b < y1 - tol]

    # Domain boundaries matching the image cut points, in image order
    if parent.orientation > 0:
        ends = [parent.domain.lo, parent.domain.hi]
    else:
        ends = [parent.domain.hi, parent.domain.lo]
    xs = [ends[0]] + [_pull_back(snap, parent.word, c) for c in cuts] + [ends[1]]
    ys = [y0] + cuts + [y1]

    children = []
    for i in range(len(ys) - 1):
        u, v = ys[i], ys[i + 1]
        k = snap.branch_index(0.5 * (u + v))
        left, right = breakpoints[k - 1], breakpoints[k]
        u_val = float(model.value(a, k, max(u, left)))
        v_val = float(model.value(a, k, min(v, right)))
        sign = 1 if v_val >= u_val else -1
        domain = Interval(min(xs[i], xs[i + 1]), max(xs[i], xs[i + 1]))
        children.append(
            Cylinder(
                word=parent.word + (k,),
                domain=domain,
                image=Interval(min(u_val, v_val), max(u_val, v_val)),
                orientation=parent.orientation * sign,
            )
        )
    return children


def _levels(snap: MapSnapshot, depth: int, cap: int) -> Iterator[Tuple[int, List[Cylinder]]]:
    level = [Cylinder(word=(), domain=snap.domain, image=snap.domain, orientation=1)]
    for j in range(1, depth + 1):
        refined: List[Cylinder] = []
        for parent in level:
            refined.extend(_refine(snap, parent))
            if len(refined) > cap:
                raise DepthTooLarge(f"P_{j}(a={snap.param}) exceeds {cap} cylinders")
        level = refined
        logger.debug("Depth %d at a=%g: %d cylinders", j, snap.param, len(level))
        yield j, level


def cylinders(snap: MapSnapshot, depth: int, cap: Optional[int] = None) -> Partition:
    """
    All cylinders of P_depth(a) on the snapshot domain.

    Args:
        snap: Map snapshot
        depth: Partition depth (>= 1)
        cap: Maximum number of cylinders before giving up

    Returns:
        Partition sorted left to right; ``min_length`` is delta(a)

    Raises:
        DepthTooLarge: If the count exceeds the cap
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    level: List[Cylinder] = []
    for _, level in _levels(snap, depth, cap or Defaults.CYLINDER_CAP):
        pass
    return Partition(param=snap.param, depth=depth, cylinders=sorted(level, key=lambda c: c.domain.lo))


def partitions_up_to(snap: MapSnapshot, depth: int, cap: Optional[int] = None) -> List[Partition]:
    """P_1(a), ..., P_depth(a), each level refined from the previous one."""
    return [
        Partition(param=snap.param, depth=j, cylinders=sorted(level, key=lambda c: c.domain.lo))
        for j, level in _levels(snap, depth, cap or Defaults.CYLINDER_CAP)
    ]
