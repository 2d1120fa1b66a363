"""Resampling, local cubic smoothing and strain derivatives."""

import logging
from typing import Optional

import numpy as np
from scipy.signal import savgol_filter

from ..config.loader import SmoothConfig
from ..errors import SegmentationError, TooFewSamplesError
from ..models.base import MIN_SAMPLES, StressStrainCurve
from .models import DerivativeProfile

logger = logging.getLogger("membranemech.segment")

MIN_STRAIN_SPAN = 1e-6


def resample_uniform(strain: np.ndarray, stress: np.ndarray, n: int) -> tuple:
    """
    Resample stress onto ``n`` uniform strain points.

    Repeated strains are averaged. When the curve is much denser than the
    grid, samples are first averaged per grid cell so noise is pooled
    instead of discarded.
    """
    order = np.argsort(strain, kind="stable")
    x = strain[order]
    y = stress[order]

    ux, inverse = np.unique(x, return_inverse=True)
    if ux.size < x.size:
        y = np.bincount(inverse, weights=y) / np.bincount(inverse)
        x = ux

    grid = np.linspace(x[0], x[-1], n)
    if x.size > 2 * n:
        step = grid[1] - grid[0]
        cell = np.clip(np.rint((x - grid[0]) / step).astype(int), 0, n - 1)
        counts = np.bincount(cell, minlength=n)
        filled = counts > 0
        mean_x = np.bincount(cell, weights=x, minlength=n)[filled] / counts[filled]
        mean_y = np.bincount(cell, weights=y, minlength=n)[filled] / counts[filled]
        return grid, np.interp(grid, mean_x, mean_y)
    return grid, np.interp(grid, x, y)


def _window_length(n: int, cfg: SmoothConfig) -> int:
    window = max(int(round(cfg.bandwidth_fraction * n)), cfg.polyorder + 2)
    if window % 2 == 0:
        window += 1
    if window > n:
        window = n if n % 2 else n - 1
    return window


def profile_from_arrays(
    strain: np.ndarray,
    stress: np.ndarray,
    cfg: Optional[SmoothConfig] = None,
) -> DerivativeProfile:
    """Build a ``DerivativeProfile`` from raw strain/stress arrays."""
    cfg = cfg or SmoothConfig()
    strain = np.asarray(strain, dtype=float)
    stress = np.asarray(stress, dtype=float)
    if strain.size < MIN_SAMPLES:
        raise TooFewSamplesError(f"too few points for smoothing ({strain.size} < {MIN_SAMPLES})")
    if strain.max() - strain.min() < MIN_STRAIN_SPAN:
        raise SegmentationError("degenerate strain range")

    grid, resampled = resample_uniform(strain, stress, cfg.grid_points)
    step = grid[1] - grid[0]
    window = _window_length(grid.size, cfg)

    smoothed = savgol_filter(resampled, window, cfg.polyorder, mode="interp")
    d1 = savgol_filter(resampled, window, cfg.polyorder, deriv=1, delta=step, mode="interp")
    d2 = savgol_filter(resampled, window, cfg.polyorder, deriv=2, delta=step, mode="interp")
    logger.debug("smoothing: %d grid points, window %d, step %.3g", grid.size, window, step)

    return DerivativeProfile(strain=grid, stress=resampled, smoothed=smoothed, d1=d1, d2=d2)


def smooth_and_differentiate(
    curve: StressStrainCurve,
    cfg: Optional[SmoothConfig] = None,
) -> DerivativeProfile:
    """
    Smooth an aligned curve and differentiate it with respect to strain.

    A cubic local polynomial over ``bandwidth_fraction`` of the grid
    reproduces polynomials up to degree three exactly, so lines and
    parabolas come back with exact derivatives.

    Raises:
        SegmentationError: Strain span below 1e-6.
    """
    strain, stress, _ = curve.arrays()
    return profile_from_arrays(strain, stress, cfg)
