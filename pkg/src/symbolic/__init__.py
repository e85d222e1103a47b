"""
Symbolic dynamics: partitions, itineraries, kneading and cylinder matching.
"""

from .condition_three import check_condition_three, compare_partitions, condition_three_sweep
from .kneading import (
    compare_kneading,
    is_renormalizable,
    kneading_from_slopes,
    kneading_path,
    kneading_sequence,
    leading_l_run,
    renormalize,
)
from .models import (
    ConditionThreeReport,
    ConditionThreeSweep,
    Cylinder,
    DepthTooLarge,
    HitsBreakpoint,
    KneadingOrder,
    KneadingPath,
    KneadingWord,
    NotUnimodal,
    Partition,
    SymbolicError,
    UnmatchedCylinder,
)
from .partition import cylinders, itinerary, partitions_up_to

__all__ = [
    "ConditionThreeReport",
    "ConditionThreeSweep",
    "Cylinder",
    "DepthTooLarge",
    "HitsBreakpoint",
    "KneadingOrder",
    "KneadingPath",
    "KneadingWord",
    "NotUnimodal",
    "Partition",
    "SymbolicError",
    "UnmatchedCylinder",
    "check_condition_three",
    "compare_kneading",
    "compare_partitions",
    "condition_three_sweep",
    "cylinders",
    "is_renormalizable",
    "itinerary",
    "kneading_from_slopes",
    "kneading_path",
    "kneading_sequence",
    "leading_l_run",
    "partitions_up_to",
    "renormalize",
]
