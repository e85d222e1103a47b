"""
Kneading sequences of skew tent maps.

The kneading word is the itinerary of the turning value T_a(0) = 1 over
{L, C, R}. Words are ordered by the signed lexicographic order of kneading
theory: L < C < R, with the comparison reversed after an odd number of R's.
"""

import logging
from typing import Iterable, Optional, Tuple

from src.config.settings import Defaults
from src.maps.families import snapshot
from src.maps.models import FamilyDescriptor, FamilyKind, MapSnapshot

from .models import KneadingOrder, KneadingPath, KneadingWord, NotUnimodal

logger = logging.getLogger(__name__)

_RANK = {"L": 0, "C": 1, "R": 2}


def _require_unimodal(kind: FamilyKind) -> None:
    if kind is not FamilyKind.SKEW_TENT:
        raise NotUnimodal(f"kneading data needs a skew tent family, got {kind.value}")


def kneading_from_slopes(alpha: float, beta: float, depth: int, c_tol: Optional[float] = None) -> KneadingWord:
    """Kneading word of T_{alpha,beta} truncated at depth or at the first C."""
    c_tol = Defaults.C_TOL if c_tol is None else c_tol
    symbols = []
    x = 1.0
    for _ in range(depth):
        if abs(x) <= c_tol:
            symbols.append("C")
            break
        symbols.append("L" if x < 0.0 else "R")
        x = 1.0 + alpha * x if x < 0.0 else 1.0 - beta * x
    return KneadingWord("".join(symbols), depth)


def kneading_sequence(snap: MapSnapshot, depth: int, c_tol: Optional[float] = None) -> KneadingWord:
    """
    Kneading word of a skew tent snapshot.

    Args:
        snap: Skew tent snapshot
        depth: Maximum word length
        c_tol: |x| at or below this emits C and stops

    Raises:
        NotUnimodal: If the snapshot is not a skew tent
    """
    _require_unimodal(snap.family.family_kind)
    alpha, beta = snap.model.slopes(snap.param)
    return kneading_from_slopes(alpha, beta, depth, c_tol)


def compare_kneading(k1: KneadingWord, k2: KneadingWord) -> KneadingOrder:
    """Signed lexicographic comparison up to the shorter length."""
    if not len(k1) or not len(k2):
        raise ValueError("kneading words must be nonempty")
    r_count = 0
    for s1, s2 in zip(k1.symbols, k2.symbols):
        if s1 != s2:
            less = _RANK[s1] < _RANK[s2]
            if r_count % 2:
                less = not less
            return KneadingOrder.LESS if less else KneadingOrder.GREATER
        if s1 == "R":
            r_count += 1
    return KneadingOrder.EQUAL_TO_DEPTH


def leading_l_run(word: KneadingWord) -> Optional[int]:
    """m >= 1 with the word starting R L^m R or equal to R L^m C; None if undecided within depth."""
    symbols = word.symbols
    if not symbols.startswith("RL"):
        return None
    m = 0
    for s in symbols[1:]:
        if s == "L":
            m += 1
        else:
            return m
    return None


def is_renormalizable(alpha: float, beta: float) -> bool:
    """alpha <= beta / (beta^2 - 1)."""
    return alpha <= beta / (beta * beta - 1.0)


def renormalize(alpha: float, beta: float) -> Tuple[float, float]:
    """Slopes of the second-iterate restriction of a renormalizable skew tent."""
    return beta * beta, alpha * beta


def kneading_path(family: FamilyDescriptor, params: Iterable[float], depth: Optional[int] = None) -> KneadingPath:
    """
    Kneading words along increasing parameters and the neighbours out of order.

    A violation is a pair of consecutive parameters whose words compare
    Greater: along a path with non-decreasing slopes the words must never
    decrease.
    """
    _require_unimodal(family.family_kind)
    depth = depth or Defaults.KNEADING_DEPTH
    params = sorted(float(a) for a in params)
    words = [kneading_sequence(snapshot(family, a), depth) for a in params]

    violation_params = []
    for (a_prev, w_prev), (a_next, w_next) in zip(zip(params, words), zip(params[1:], words[1:])):
        if compare_kneading(w_prev, w_next) is KneadingOrder.GREATER:
            violation_params.append((a_prev, a_next))
            logger.warning("Kneading order violated between a=%g (%s) and a=%g (%s)", a_prev, w_prev, a_next, w_next)

    return KneadingPath(
        params=params,
        words=words,
        violations=len(violation_params),
        violation_params=violation_params,
        first_l_run=leading_l_run(words[-1]) if words else None,
    )
