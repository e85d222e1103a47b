"""
Finite-depth verification of the cylinder matching condition.

For a1 <= a2 every cylinder w of P_j(a1) is matched to the cylinder w' of
P_j(a2) with the same word. The check reports how far apart the images
T_{a1}^j(w) and T_{a2}^j(w') lie relative to a2 - a1 and how their lengths
compare; the largest of the two ratios is the empirical C2 at this depth.
"""

import logging
from collections import Counter
from typing import List, Optional

from src.maps.families import snapshot
from src.maps.models import FamilyDescriptor, Interval

from .models import ConditionThreeReport, ConditionThreeSweep, Partition, UnmatchedCylinder
from .partition import cylinders, partitions_up_to

logger = logging.getLogger(__name__)

_INCLUSION_TOL = 1e-12
_MAX_LISTED = 20


def _set_distance(i1: Interval, i2: Interval) -> float:
    return max(0.0, i2.lo - i1.hi, i1.lo - i2.hi)


def default_c2_bound(family: FamilyDescriptor) -> float:
    """max(L, 1/delta_0)."""
    return max(family.lip_const, 1.0 / family.delta0)


def compare_partitions(
    family: FamilyDescriptor,
    p1: Partition,
    p2: Partition,
    c2_bound: Optional[float] = None,
) -> ConditionThreeReport:
    """Match two partitions of equal depth by word and measure the image ratios."""
    a1, a2 = p1.param, p2.param
    c2_bound = default_c2_bound(family) if c2_bound is None else c2_bound
    targets = p2.by_word()

    matched = 0
    hits: Counter = Counter()
    unmatched_words: List[str] = []
    distance_ratio = 0.0
    size_ratio = 0.0
    inclusion = True
    da = a2 - a1

    for cyl in p1.cylinders:
        partner = targets.get(cyl.word)
        if partner is None:
            if len(unmatched_words) < _MAX_LISTED:
                unmatched_words.append(cyl.word_key)
            continue
        matched += 1
        hits[partner.word] += 1

        dist = _set_distance(cyl.image, partner.image)
        if da > 0.0:
            distance_ratio = max(distance_ratio, dist / da)
        elif dist > 0.0:
            distance_ratio = float("inf")

        if partner.image.length > 0.0:
            size_ratio = max(size_ratio, cyl.image.length / partner.image.length)
        elif cyl.image.length > 0.0:
            size_ratio = float("inf")

        tol = _INCLUSION_TOL * max(1.0, abs(partner.image.hi))
        if cyl.image.lo < partner.image.lo - tol or cyl.image.hi > partner.image.hi + tol:
            inclusion = False

    c2_estimate = max(distance_ratio, size_ratio)
    report = ConditionThreeReport(
        depth=p1.depth,
        a1=a1,
        a2=a2,
        total=len(p1),
        matched=matched,
        symbolic_ok=matched == len(p1),
        distance_ok=distance_ratio <= c2_bound,
        size_ok=size_ratio <= c2_bound,
        image_inclusion=inclusion,
        distance_ratio=distance_ratio,
        size_ratio=size_ratio,
        c2_estimate=c2_estimate,
        c2_bound=c2_bound,
        multiplicity=max(hits.values()) if hits else 0,
        unmatched_words=unmatched_words,
    )
    if not report.symbolic_ok:
        logger.warning(
            "Depth %d, a1=%g, a2=%g: %d unmatched cylinders", report.depth, a1, a2, report.unmatched,
        )
    return report


def check_condition_three(
    family: FamilyDescriptor,
    a1: float,
    a2: float,
    depth: int,
    strict: bool = True,
    c2_bound: Optional[float] = None,
) -> ConditionThreeReport:
    """
    Check the cylinder matching between P_depth(a1) and P_depth(a2).

    Args:
        family: Family descriptor
        a1, a2: Parameters with a1 <= a2
        depth: Partition depth
        strict: Raise on unmatched cylinders instead of only reporting them
        c2_bound: Bound the ratios are compared against (default max(L, 1/delta_0))

    Raises:
        UnmatchedCylinder: In strict mode, if any cylinder has no partner
    """
    if a1 > a2:
        raise ValueError(f"need a1 <= a2, got {a1} > {a2}")
    p1 = cylinders(snapshot(family, a1), depth)
    p2 = p1 if a1 == a2 else cylinders(snapshot(family, a2), depth)
    report = compare_partitions(family, p1, p2, c2_bound)
    if strict and not report.symbolic_ok:
        raise UnmatchedCylinder(report)
    return report


def condition_three_sweep(
    family: FamilyDescriptor,
    a1: float,
    a2: float,
    max_depth: int,
    c2_bound: Optional[float] = None,
) -> ConditionThreeSweep:
    """
    Reports for depths 1..max_depth and the largest depth through which all passed.

    Never raises on unmatched cylinders; they show up in the reports.
    """
    if a1 > a2:
        raise ValueError(f"need a1 <= a2, got {a1} > {a2}")
    levels1 = partitions_up_to(snapshot(family, a1), max_depth)
    levels2 = levels1 if a1 == a2 else partitions_up_to(snapshot(family, a2), max_depth)

    reports = [compare_partitions(family, p1, p2, c2_bound) for p1, p2 in zip(levels1, levels2)]
    verified = 0
    for report in reports:
        if not report.passed:
            break
        verified = report.depth
    logger.info("Cylinder matching a1=%g a2=%g verified through depth %d", a1, a2, verified)
    return ConditionThreeSweep(a1=a1, a2=a2, reports=reports, largest_verified_depth=verified)
