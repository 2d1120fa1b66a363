"""
Property extraction from a segmentation.

Every property is read off the region fits, never the raw data, so the
values stay consistent with the piecewise model.
"""

import logging
from typing import Optional

import numpy as np

from ..errors import (
    DegenerateIntersectionError,
    MissingRegionError,
    NonPhysicalError,
    SegmentationError,
)
from ..models.base import StressStrainCurve
from ..segment.models import RegionFit, RegionLabel, SegmentationResult, SegmentFlag
from .models import MechanicalProperties, PropertyFlag

logger = logging.getLogger("membranemech.props")

#: Minimum slope difference (bar) for a plateau/densification intersection.
PARALLEL_TOLERANCE = 1e-9


def _require(seg: SegmentationResult, label: RegionLabel) -> RegionFit:
    fit = seg.region(label)
    if fit is None:
        raise MissingRegionError(
            f"{seg.sample_id}/{seg.position_index}: no {label.value} region"
        )
    return fit


def elastic_modulus(seg: SegmentationResult) -> float:
    """
    Slope of the elastic fit, in bar.

    Raises:
        MissingRegionError: No elastic region.
        NonPhysicalError: Slope is zero or negative.
    """
    slope = _require(seg, RegionLabel.ELASTIC).slope
    if slope <= 0:
        raise NonPhysicalError(f"non-physical elastic modulus {slope!r} bar")
    return slope


def yield_strength(seg: SegmentationResult) -> float:
    """Elastic fit evaluated at the elastic/plateau breakpoint."""
    elastic = _require(seg, RegionLabel.ELASTIC)
    _require(seg, RegionLabel.PLATEAU)
    return elastic.evaluate(elastic.strain_range[1])


def pore_fraction(seg: SegmentationResult) -> float:
    """
    Strain where the plateau and densification lines intersect.

    Raises:
        DegenerateIntersectionError: The two fits are parallel.
    """
    plateau = _require(seg, RegionLabel.PLATEAU)
    dens = _require(seg, RegionLabel.DENSIFICATION)
    dslope = dens.slope - plateau.slope
    if abs(dslope) < PARALLEL_TOLERANCE:
        raise DegenerateIntersectionError(
            f"{seg.sample_id}/{seg.position_index}: degenerate intersection "
            "(plateau and densification fits are parallel)"
        )
    return (plateau.intercept - dens.intercept) / dslope


def creep_strain(seg: SegmentationResult) -> Optional[float]:
    """Strain accumulated across the creep region, or None without one."""
    creep = seg.region(RegionLabel.CREEP)
    if creep is None:
        return None
    return creep.strain_range[1] - creep.strain_range[0]


def compressibility(curve: StressStrainCurve) -> float:
    """Largest aligned strain reached during the test."""
    if not curve.strain:
        raise ValueError(f"{curve.sample_id}: empty curve")
    return float(np.max(curve.strain))


_CARRIED = {
    SegmentFlag.NO_PLATEAU: PropertyFlag.NO_PLATEAU,
    SegmentFlag.LOW_R2: PropertyFlag.LOW_R2,
    SegmentFlag.SLOPE_ORDER_VIOLATION: PropertyFlag.SLOPE_ORDER_VIOLATION,
}


def extract_properties(
    seg: SegmentationResult,
    curve: Optional[StressStrainCurve] = None,
) -> MechanicalProperties:
    """
    Build the full property record for one segmented curve.

    Segmentation flags are carried over; ``pore_fraction_gt_1`` and
    ``zero_creep`` are added here. ``compressibility`` is filled only when
    the aligned ``curve`` is given.

    Raises:
        SegmentationError: ``seg`` is a failed segmentation.
    """
    if not seg.ok:
        raise SegmentationError(seg.failure_reason or "segmentation failed")

    flags = [_CARRIED[f] for f in seg.flags if f in _CARRIED]
    pf = pore_fraction(seg)
    if pf > 1.0:
        flags.append(PropertyFlag.PORE_FRACTION_GT_1)
        logger.warning(
            "%s/%d: pore fraction %.3f > 1 (possible lateral slippage)",
            seg.sample_id,
            seg.position_index,
            pf,
        )
    creep = creep_strain(seg)
    if creep is not None and creep <= 0:
        flags.append(PropertyFlag.ZERO_CREEP)

    return MechanicalProperties(
        sample_id=seg.sample_id,
        position_index=seg.position_index,
        elastic_modulus=elastic_modulus(seg),
        yield_strength=yield_strength(seg),
        pore_fraction=pf,
        creep_strain=creep,
        compressibility=compressibility(curve) if curve is not None else None,
        flags=tuple(flags),
    )
