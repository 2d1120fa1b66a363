"""
Unit conversion and contact alignment.

stress = force / pin area, reported in bar (1 N/mm² = 10 bar);
strain = displacement / thickness.
"""

import logging
from typing import Optional

import numpy as np
from scipy.stats import linregress

from ..config.loader import AlignConfig, IngestConfig
from ..errors import ContactNotFoundError, GeometryError, TooFewSamplesError
from ..models.base import MIN_SAMPLES, CurveFlag, RawCurve, SampleGeometry, StressStrainCurve

logger = logging.getLogger("membranemech.ingest")

#: bar per N/mm²
BAR_PER_MPA = 10.0


def check_geometry(geom: SampleGeometry, cfg: Optional[IngestConfig] = None) -> None:
    """
    Validate geometry against physical limits and the thickness band.

    Raises:
        GeometryError: Non-positive pin/thickness or thickness outside band.
    """
    cfg = cfg or IngestConfig()
    if geom.pin_diameter_mm <= 0:
        raise GeometryError(f"pin diameter must be positive, got {geom.pin_diameter_mm}")
    if geom.thickness_um <= 0:
        raise GeometryError(f"thickness must be positive, got {geom.thickness_um}")
    if not cfg.thickness_min_um <= geom.thickness_um <= cfg.thickness_max_um:
        raise GeometryError(
            f"thickness {geom.thickness_um} um outside plausibility band "
            f"[{cfg.thickness_min_um}, {cfg.thickness_max_um}]"
        )


def to_stress_strain(
    raw: RawCurve,
    geom: SampleGeometry,
    cfg: Optional[IngestConfig] = None,
) -> StressStrainCurve:
    """
    Convert force/displacement to engineering stress (bar) and strain.

    The point count is preserved; no filtering happens here.
    """
    check_geometry(geom, cfg)
    raw.validate_curve()

    stress_per_newton = BAR_PER_MPA / geom.pin_area_mm2
    force = np.asarray(raw.force, dtype=float)
    disp = np.asarray(raw.displacement, dtype=float)

    return StressStrainCurve(
        sample_id=raw.sample_id,
        position_index=raw.position_index,
        strain=(disp / geom.thickness_um).tolist(),
        stress=(force * stress_per_newton).tolist(),
        time=list(raw.time),
        geometry=geom,
    )


def _contact_index(stress: np.ndarray, threshold: float, run: int) -> Optional[int]:
    """First index whose next ``run`` samples all exceed ``threshold``."""
    above = stress > threshold
    run = min(run, above.size)
    sustained = np.lib.stride_tricks.sliding_window_view(above, run).all(axis=1)
    hits = np.flatnonzero(sustained)
    return int(hits[0]) if hits.size else None


def align_contact(
    curve: StressStrainCurve,
    cfg: Optional[AlignConfig] = None,
) -> StressStrainCurve:
    """
    Detect the contact point and shift the curve to start at (0, 0).

    Contact is the first sample whose stress exceeds
    ``contact_fraction`` x max stress and stays above it for
    ``contact_run`` samples. The toe is removed by back-extrapolating a
    line fitted to the initial loading to zero stress; samples before
    that strain are dropped and the mean of their stress becomes the
    stress offset. Stresses below ``-noise_floor_bar`` are clamped and
    flagged.

    An already aligned curve is returned unchanged.

    Raises:
        TooFewSamplesError: Fewer than 16 points.
        ContactNotFoundError: No sustained stress above the threshold.
    """
    if curve.is_aligned:
        return curve
    cfg = cfg or AlignConfig()

    strain, stress, t = curve.arrays()
    n = strain.size
    if n < MIN_SAMPLES:
        raise TooFewSamplesError(f"{curve.sample_id}: too few points ({n} < {MIN_SAMPLES})")

    peak = float(stress.max())
    if peak <= 0:
        raise ContactNotFoundError(f"{curve.sample_id}/{curve.position_index}: no contact detected")
    threshold = cfg.contact_fraction * peak
    start = _contact_index(stress, threshold, cfg.contact_run)
    if start is None:
        raise ContactNotFoundError(f"{curve.sample_id}/{curve.position_index}: no contact detected")

    # Toe line: from contact up to toe_fit_fraction of peak, at least toe_fit_points long
    over = _contact_index(stress[start:], cfg.toe_fit_fraction * peak, cfg.contact_run)
    stop = start + (over if over is not None else n - start)
    stop = min(max(stop, start + cfg.toe_fit_points), n)
    fit = linregress(strain[start:stop], stress[start:stop])

    baseline = 0.0
    if fit.slope > 0:
        contact_strain = -fit.intercept / fit.slope
        pre = stress[:start][strain[:start] < contact_strain - cfg.offset_tolerance]
        if pre.size:
            baseline = float(pre.mean())
            contact_strain = (baseline - fit.intercept) / fit.slope
        # contact cannot precede the first sample or follow the fitted toe
        contact_strain = float(np.clip(contact_strain, strain[0], strain[stop - 1]))
    else:
        contact_strain = float(strain[start])
    if abs(contact_strain) <= cfg.offset_tolerance:
        contact_strain = 0.0

    keep = strain - contact_strain >= -cfg.offset_tolerance
    first = int(np.argmax(keep))
    new_strain = np.maximum(strain[first:] - contact_strain, 0.0)
    new_stress = stress[first:] - baseline if baseline else stress[first:].copy()
    new_time = t[first:]

    if first > 0 and new_strain[0] > cfg.offset_tolerance:
        t_anchor = float(
            np.interp(contact_strain, strain[first - 1 : first + 1], t[first - 1 : first + 1])
        )
        new_strain = np.concatenate(([0.0], new_strain))
        new_stress = np.concatenate(([0.0], new_stress))
        new_time = np.concatenate(([t_anchor], new_time))

    flags = list(curve.flags)
    floor = -cfg.noise_floor_bar
    if np.any(new_stress < floor):
        logger.warning(
            "%s/%d: %d samples below noise floor clamped (possible pin slippage)",
            curve.sample_id,
            curve.position_index,
            int(np.sum(new_stress < floor)),
        )
        new_stress = np.maximum(new_stress, floor)
        flags.append(CurveFlag.NEGATIVE_STRESS_CLAMPED)
    if np.any(np.diff(new_strain) < -cfg.monotonic_tolerance):
        flags.append(CurveFlag.NON_MONOTONE_STRAIN)

    logger.debug(
        "%s/%d: contact at strain %.6g, stress offset %.4g bar, %d points dropped",
        curve.sample_id,
        curve.position_index,
        contact_strain,
        baseline,
        first,
    )
    return curve.model_copy(
        update={
            "strain": new_strain.tolist(),
            "stress": new_stress.tolist(),
            "time": new_time.tolist(),
            "alignment_offset": (float(contact_strain), float(baseline)),
            "flags": tuple(dict.fromkeys(flags)),
        }
    )
