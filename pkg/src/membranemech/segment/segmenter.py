"""
Region labelling for aligned compression curves.

Loading is split into elastic, plateau and densification by
``find_breakpoints``; a constant-force hold at the end of the test becomes
the creep region, fitted as strain against time.
"""

import logging
from typing import List, Optional, Tuple

import numpy as np
import pandas as pd
from scipy.stats import linregress

from ..config.loader import SegmentConfig
from ..errors import SegmentationError
from ..models.base import StressStrainCurve
from .breakpoints import find_breakpoints
from .models import RegionFit, RegionLabel, SegmentationResult, SegmentFlag
from .smoothing import profile_from_arrays

logger = logging.getLogger("membranemech.segment")

LOADING_LABELS = (RegionLabel.ELASTIC, RegionLabel.PLATEAU, RegionLabel.DENSIFICATION)


def detect_creep(
    stress: np.ndarray,
    time: np.ndarray,
    cfg: Optional[SegmentConfig] = None,
) -> Optional[int]:
    """
    Index where a trailing constant-stress hold begins, or None.

    Walks back from the last sample while the median-smoothed stress stays
    within ``creep_stress_tolerance`` x max stress of the final value. The
    hold counts as creep only if it lasts longer than
    ``creep_min_duration_fraction`` of the test. The onset is then moved to
    the first sample that reaches the hold level.
    """
    cfg = cfg or SegmentConfig()
    stress = np.asarray(stress, dtype=float)
    time = np.asarray(time, dtype=float)
    if stress.size < 2 or time.size != stress.size:
        return None

    smooth = (
        pd.Series(stress)
        .rolling(cfg.creep_smoothing_window, center=True, min_periods=1)
        .median()
        .to_numpy()
    )
    peak = float(np.max(np.abs(stress)))
    tol = cfg.creep_stress_tolerance * peak

    outside = np.flatnonzero(np.abs(smooth - smooth[-1]) > tol)
    start = int(outside[-1]) + 1 if outside.size else 0
    if start >= stress.size - 1:
        return None

    duration = time[-1] - time[0]
    hold = time[-1] - time[start]
    if duration <= 0 or hold <= cfg.creep_min_duration_fraction * duration:
        return None

    held = smooth[start:]
    level = float(held.mean()) - (3.0 * float(held.std()) + 1e-9 * peak)
    onset = int(np.argmax(smooth >= level))
    onset = min(onset, start)
    logger.debug("creep hold from index %d (%.3g s of %.3g s)", onset, hold, duration)
    return onset


def _fit_region(
    label: RegionLabel,
    x: np.ndarray,
    y: np.ndarray,
    lo: float,
    hi: float,
    trim_lo: float,
    trim_hi: float,
    cfg: SegmentConfig,
) -> RegionFit:
    mask = (x >= lo + trim_lo) & (x <= hi - trim_hi)
    count = int(mask.sum())
    if count < cfg.min_region_points or np.ptp(x[mask]) == 0:
        raise SegmentationError(f"{label.value} region has too few points ({count})")
    fit = linregress(x[mask], y[mask])
    return RegionFit(
        label=label,
        strain_range=(float(lo), float(hi)),
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        r_squared=float(min(1.0, fit.rvalue**2)),
        point_count=count,
    )


def fit_loading_regions(
    strain: np.ndarray,
    stress: np.ndarray,
    breakpoints: List[float],
    cfg: SegmentConfig,
) -> List[RegionFit]:
    """
    Least-squares lines for elastic, plateau and densification.

    Each fit uses the raw points of its region, trimmed by
    ``fit_trim_fraction`` of the region width at internal boundaries.
    """
    edges = [float(strain.min()), *breakpoints, float(strain.max())]
    fits = []
    for j, label in enumerate(LOADING_LABELS):
        lo, hi = edges[j], edges[j + 1]
        trim = cfg.fit_trim_fraction * (hi - lo)
        fits.append(
            _fit_region(
                label,
                strain,
                stress,
                lo,
                hi,
                trim if j > 0 else 0.0,
                trim if j < len(LOADING_LABELS) - 1 else 0.0,
                cfg,
            )
        )
    return fits


def _fit_creep(strain: np.ndarray, time: np.ndarray, cfg: SegmentConfig) -> RegionFit:
    if strain.size < cfg.min_region_points:
        raise SegmentationError(f"creep region has too few points ({strain.size})")
    fit = linregress(time, strain)
    return RegionFit(
        label=RegionLabel.CREEP,
        strain_range=(float(strain[0]), float(strain[-1])),
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        r_squared=float(min(1.0, fit.rvalue**2)) if np.isfinite(fit.rvalue) else 0.0,
        point_count=int(strain.size),
    )


def structural_flags(
    regions: List[RegionFit], breakpoints: List[float], span: float, cfg: SegmentConfig
) -> Tuple[SegmentFlag, ...]:
    """Slope-order, fit-quality and plateau-width warnings."""
    by_label = {r.label: r for r in regions}
    elastic = by_label[RegionLabel.ELASTIC]
    plateau = by_label[RegionLabel.PLATEAU]
    dens = by_label[RegionLabel.DENSIFICATION]

    flags = []
    if not (elastic.slope > plateau.slope and dens.slope > plateau.slope):
        flags.append(SegmentFlag.SLOPE_ORDER_VIOLATION)
    if min(elastic.r_squared, dens.r_squared) < cfg.min_r2:
        flags.append(SegmentFlag.LOW_R2)
    if breakpoints[1] - breakpoints[0] < cfg.min_plateau_fraction * span:
        flags.append(SegmentFlag.NO_PLATEAU)
    return tuple(flags)


def segment_curve(
    curve: StressStrainCurve,
    cfg: Optional[SegmentConfig] = None,
) -> SegmentationResult:
    """
    Segment an aligned curve into labelled regions.

    When a creep hold is detected, the breakpoint search runs on the
    loading part only and the hold onset strain is appended as the third
    breakpoint.

    Raises:
        SegmentationError: No usable breakpoints or a region too small to fit.
    """
    cfg = cfg or SegmentConfig()
    strain, stress, time = curve.arrays()

    onset = detect_creep(stress, time, cfg) if time.size == strain.size else None
    end = onset + 1 if onset is not None else strain.size
    load_strain, load_stress = strain[:end], stress[:end]

    profile = profile_from_arrays(load_strain, load_stress, cfg.smooth)
    breakpoints = find_breakpoints(profile, 2, cfg)
    regions = fit_loading_regions(load_strain, load_stress, breakpoints, cfg)
    span = float(load_strain.max() - load_strain.min())
    flags = structural_flags(regions, breakpoints, span, cfg)

    has_creep = onset is not None
    if has_creep:
        creep = _fit_creep(strain[onset:], time[onset:], cfg)
        # loading ends where the hold starts
        start = regions[-1].strain_range[1]
        creep = creep.model_copy(
            update={"strain_range": (start, max(start, creep.strain_range[1]))}
        )
        regions.append(creep)
        breakpoints = [*breakpoints, start]

    if flags:
        logger.warning(
            "%s/%d: segmentation flags %s",
            curve.sample_id,
            curve.position_index,
            ",".join(f.value for f in flags),
        )
    logger.info(
        "%s/%d: breakpoints %s%s",
        curve.sample_id,
        curve.position_index,
        ", ".join(f"{b:.4f}" for b in breakpoints),
        " (creep)" if has_creep else "",
    )
    return SegmentationResult(
        sample_id=curve.sample_id,
        position_index=curve.position_index,
        breakpoints=breakpoints,
        regions=regions,
        has_creep=has_creep,
        flags=flags,
    )
