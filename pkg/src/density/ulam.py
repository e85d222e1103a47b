"""
Ulam discretization of the transfer operator and its fixed density.

The domain is cut into equal bins. Entry (i, k) of the Ulam matrix is the
fraction of bin i (by length) that T_a maps into bin k. Each branch is
handled by pulling the target bin edges back through the branch inverse:
between consecutive cut points T_a stays inside one source bin and one
target bin, so every entry is a sum of exact segment lengths for affine and
nonlinear branches alike.
"""

import logging
from typing import Optional

import numpy as np
from scipy import sparse

from src.config.settings import Defaults
from src.maps.families import invariant_interval
from src.maps.models import Interval, MapSnapshot

from .models import BinsTooSmall, DensityEstimate, NoConvergence

logger = logging.getLogger(__name__)


def bin_edges(domain: Interval, bins: int) -> np.ndarray:
    if bins < 2:
        raise BinsTooSmall(f"need at least 2 bins, got {bins}")
    return np.linspace(domain.lo, domain.hi, bins + 1)


def _bin_of(points: np.ndarray, lo: float, width: float, bins: int) -> np.ndarray:
    return np.clip(np.floor((points - lo) / width).astype(np.int64), 0, bins - 1)


def ulam_matrix(snap: MapSnapshot, bins: int) -> sparse.csr_matrix:
    """
    Row-stochastic Ulam matrix of T_a on the snapshot domain.

    Args:
        snap: Frozen map
        bins: Number of equal bins (>= 2)

    Returns:
        bins x bins CSR matrix whose rows sum to one

    Raises:
        BinsTooSmall: If bins < 2
    """
    domain = invariant_interval(snap)
    edges = bin_edges(domain, bins)
    lo, width = domain.lo, domain.length / bins
    model, a = snap.model, snap.param

    rows, cols, data = [], [], []
    for k in range(1, snap.branch_count + 1):
        left, right = snap.branch_interval(k)
        if right <= left:
            continue
        y0, y1 = model.branch_image(a, k, snap.breakpoints)
        y_lo, y_hi = min(y0, y1), max(y0, y1)

        targets = edges[(edges > y_lo) & (edges < y_hi)]
        cuts = np.asarray(model.inverse(a, k, targets), dtype=float) if len(targets) else np.empty(0)
        sources = edges[(edges > left) & (edges < right)]
        points = np.unique(np.clip(np.concatenate([[left, right], sources, cuts]), left, right))

        lengths = np.diff(points)
        keep = lengths > 0.0
        mids = 0.5 * (points[:-1] + points[1:])[keep]
        images = np.asarray(model.value(a, k, mids), dtype=float)

        rows.append(_bin_of(mids, lo, width, bins))
        cols.append(_bin_of(images, lo, width, bins))
        data.append(lengths[keep] / width)

    matrix = sparse.coo_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
        shape=(bins, bins),
    ).tocsr()
    matrix.sum_duplicates()
    logger.debug("Ulam matrix at a=%g: %d bins, %d nonzeros", a, bins, matrix.nnz)
    return matrix


def support_tolerance(tol: float, bins: int) -> float:
    """Bins carrying less mass than this are outside the support."""
    return 10.0 * max(tol, np.finfo(float).eps) / bins


def mass_hull(edges: np.ndarray, masses: np.ndarray, threshold: float) -> Interval:
    """Closed bin-aligned hull of the bins whose mass exceeds threshold."""
    heavy = np.nonzero(masses > threshold)[0]
    if not len(heavy):
        return Interval(float(edges[0]), float(edges[-1]))
    return Interval(float(edges[heavy[0]]), float(edges[heavy[-1] + 1]))


def invariant_density(
    snap: MapSnapshot,
    bins: Optional[int] = None,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
) -> DensityEstimate:
    """
    Fixed density of the Ulam matrix by power iteration from the uniform vector.

    The iteration runs on the lazy chain (I + P^T) / 2, which has the same
    fixed vector as P^T and no periodic part, until the L1 change of one step
    falls below tol.

    Raises:
        BinsTooSmall: If bins < 2
        NoConvergence: If max_iter steps do not reach tol
    """
    bins = bins or Defaults.BINS
    tol = Defaults.POWER_TOL if tol is None else tol
    max_iter = max_iter or Defaults.POWER_MAX_ITER
    if tol <= 0.0:
        raise ValueError("tol must be positive")

    transposed = ulam_matrix(snap, bins).T.tocsr()
    edges = bin_edges(invariant_interval(snap), bins)

    mass = np.full(bins, 1.0 / bins)
    change = np.inf
    iterations = 0
    for iterations in range(1, max_iter + 1):
        updated = 0.5 * (mass + transposed @ mass)
        updated /= updated.sum()
        change = float(np.abs(updated - mass).sum())
        mass = updated
        if change <= tol:
            break
    else:
        raise NoConvergence(max_iter, change)

    widths = np.diff(edges)
    values = mass / widths
    stationarity = float(np.abs(transposed @ mass - mass).sum())
    estimate = DensityEstimate(
        edges=edges,
        values=values,
        support=mass_hull(edges, mass, support_tolerance(tol, bins)),
        normalization_residual=abs(float(np.sum(values * widths)) - 1.0),
        stationarity_residual=stationarity,
        iterations=iterations,
        param=snap.param,
    )
    logger.debug("Density at a=%g converged in %d iterations (residual %.3g)", snap.param, iterations, stationarity)
    return estimate
