"""
Breakpoint search for continuous piecewise-linear fits.

The model for ``k`` breakpoints is the hinge basis::

    stress ~ c0 + c1*x + sum_j d_j * max(x - b_j, 0)

Seeds come from the largest curvature peaks. Each breakpoint is then
moved to the grid point minimizing the total squared residual while the
others stay fixed, sweep after sweep, and finally polished off-grid with
a bounded scalar minimizer.
"""

import logging
from typing import List, Optional, Sequence

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.signal import find_peaks

from ..config.loader import SegmentConfig
from ..errors import SegmentationError
from .models import DerivativeProfile

logger = logging.getLogger("membranemech.segment")

#: A single line explaining this share of the variance leaves nothing to split.
_NO_CURVATURE_RATIO = 1e-12


def _design(u: np.ndarray, breaks: Sequence[float]) -> np.ndarray:
    cols = [np.ones_like(u), u]
    cols.extend(np.maximum(u - b, 0.0) for b in breaks)
    return np.column_stack(cols)


def piecewise_sse(u: np.ndarray, y: np.ndarray, breaks: Sequence[float]) -> float:
    """Residual sum of squares of the continuous hinge fit with ``breaks``."""
    X = _design(u, breaks)
    beta, *_ = np.linalg.lstsq(X, y, rcond=None)
    resid = y - X @ beta
    return float(resid @ resid)


def _scan(u: np.ndarray, y: np.ndarray, fixed: np.ndarray, candidates: np.ndarray) -> np.ndarray:
    """SSE for every candidate breakpoint added to the ``fixed`` design."""
    H = np.maximum(u[:, None] - candidates[None, :], 0.0)
    p = fixed.shape[1]
    m = candidates.size

    FtH = fixed.T @ H
    A = np.empty((m, p + 1, p + 1))
    A[:, :p, :p] = fixed.T @ fixed
    A[:, :p, p] = FtH.T
    A[:, p, :p] = FtH.T
    A[:, p, p] = np.einsum("ij,ij->j", H, H)

    rhs = np.empty((m, p + 1))
    rhs[:, :p] = fixed.T @ y
    rhs[:, p] = H.T @ y

    beta = np.linalg.solve(A, rhs[..., None])[..., 0]
    return float(y @ y) - np.einsum("ij,ij->i", beta, rhs)


def _feasible(idx: List[int], n: int, gap: int) -> bool:
    bounds = [0, *idx, n - 1]
    return all(b - a >= gap for a, b in zip(bounds, bounds[1:]))


def _uniform_seed(n: int, k: int) -> List[int]:
    return [int(round((j + 1) * (n - 1) / (k + 1))) for j in range(k)]


def curvature_seeds(profile: DerivativeProfile, k: int, cfg: SegmentConfig) -> List[int]:
    """
    Grid indices of the ``k`` largest isolated peaks of |d2|.

    Peaks within ``boundary_trim`` of either end are ignored; a peak must
    reach ``peak_rel_height`` x max|d1| / span and be at least
    ``min_peak_separation`` of the grid away from a taller one. Returns
    fewer than ``k`` indices when the curve does not curve enough.
    """
    n = len(profile)
    trim = int(np.ceil(cfg.boundary_trim * n))
    curvature = np.abs(profile.d2)
    height = cfg.peak_rel_height * float(np.max(np.abs(profile.d1))) / profile.span
    distance = max(1, int(round(cfg.min_peak_separation * n)))

    interior = curvature[trim : n - trim]
    peaks, props = find_peaks(interior, height=height, distance=distance)
    if peaks.size == 0:
        return []
    order = np.argsort(-props["peak_heights"], kind="stable")[:k]
    return sorted(int(peaks[i]) + trim for i in order)


def _descend(u: np.ndarray, y: np.ndarray, idx: List[int], gap: int, sweeps: int) -> List[int]:
    n = u.size
    k = len(idx)
    idx = list(idx)
    for sweep in range(sweeps):
        moved = False
        for j in range(k):
            others = [u[i] for t, i in enumerate(idx) if t != j]
            lo = idx[j - 1] + gap if j > 0 else gap
            hi = idx[j + 1] - gap if j < k - 1 else n - 1 - gap
            candidates = np.arange(lo, hi + 1)
            sse = _scan(u, y, _design(u, others), u[candidates])
            best = int(candidates[np.argmin(sse)])
            if best != idx[j]:
                idx[j] = best
                moved = True
        if not moved:
            logger.debug("breakpoint descent converged after %d sweeps", sweep + 1)
            break
    return idx


def _polish(u: np.ndarray, y: np.ndarray, idx: List[int]) -> List[float]:
    breaks = [float(u[i]) for i in idx]
    for j, i in enumerate(idx):
        def objective(b: float, j: int = j) -> float:
            trial = list(breaks)
            trial[j] = b
            return piecewise_sse(u, y, trial)

        res = minimize_scalar(
            objective, bounds=(u[i - 1], u[i + 1]), method="bounded", options={"xatol": 1e-7}
        )
        if res.fun < objective(breaks[j]):
            breaks[j] = float(res.x)
    return breaks


def find_breakpoints(
    profile: DerivativeProfile,
    n_break: int,
    cfg: Optional[SegmentConfig] = None,
) -> List[float]:
    """
    Locate ``n_break`` breakpoints of a continuous piecewise-linear fit.

    Both the curvature-peak seed and a uniform split are refined; the
    lower residual wins, with the curvature seed preferred on ties.

    Returns:
        Breakpoint strains, sorted ascending.

    Raises:
        SegmentationError: The curve has no curvature, or the fit does not
            reduce the single-line residual by ``min_sse_reduction``.
    """
    cfg = cfg or SegmentConfig()
    if n_break < 1:
        raise ValueError(f"n_break must be positive, got {n_break}")

    n = len(profile)
    gap = cfg.min_region_points
    if n < (n_break + 1) * gap + 1:
        raise SegmentationError(f"{n} grid points cannot hold {n_break + 1} regions")

    x0 = float(profile.strain[0])
    span = profile.span
    u = (profile.strain - x0) / span
    y = np.asarray(profile.stress, dtype=float)

    line_sse = piecewise_sse(u, y, [])
    total = float(np.sum((y - y.mean()) ** 2))
    if total == 0.0 or line_sse <= _NO_CURVATURE_RATIO * total:
        raise SegmentationError("segmentation failure: curve is a straight line")

    seeds = []
    peaks = curvature_seeds(profile, n_break, cfg)
    if len(peaks) == n_break and _feasible(peaks, n, gap):
        seeds.append(peaks)
    else:
        logger.debug("only %d curvature peaks for %d breakpoints", len(peaks), n_break)
    seeds.append(_uniform_seed(n, n_break))

    best_idx, best_sse = None, np.inf
    for seed in seeds:
        idx = _descend(u, y, seed, gap, cfg.max_sweeps)
        sse = piecewise_sse(u, y, [u[i] for i in idx])
        if sse < best_sse:
            best_idx, best_sse = idx, sse

    breaks = _polish(u, y, best_idx)
    sse = piecewise_sse(u, y, breaks)
    if sse >= (1.0 - cfg.min_sse_reduction) * line_sse:
        raise SegmentationError(
            f"segmentation failure: piecewise fit leaves {sse / line_sse:.1%} of line residual"
        )

    result = sorted(x0 + b * span for b in breaks)
    logger.debug("breakpoints %s (sse %.4g, line sse %.4g)", result, sse, line_sse)
    return result
