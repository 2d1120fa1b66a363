"""Fitting success criteria."""

import logging
from typing import List, Optional, Sequence

from ..config.loader import QualityConfig
from ..errors import MembraneMechError
from ..props.extract import pore_fraction
from ..segment.models import RegionLabel, SegmentationResult, SegmentFlag
from .models import CurveVerdict, QualityReport

logger = logging.getLogger("membranemech.quality")


def judge_curve(seg: SegmentationResult, cfg: QualityConfig) -> CurveVerdict:
    """Apply the per-curve criteria and collect every failing reason."""
    if not seg.ok:
        return CurveVerdict(
            position_index=seg.position_index,
            passed=False,
            reasons=(f"segmentation failed: {seg.failure_reason or 'unknown'}",),
        )

    reasons: List[str] = []
    for label in (RegionLabel.ELASTIC, RegionLabel.DENSIFICATION):
        fit = seg.region(label)
        if fit is None:
            reasons.append(f"missing {label.value} region")
        elif fit.r_squared < cfg.min_r2:
            reasons.append(f"{label.value} r_squared {fit.r_squared:.3f} < {cfg.min_r2}")
    elastic = seg.region(RegionLabel.ELASTIC)
    if elastic is not None and elastic.slope <= 0:
        reasons.append(f"non-physical elastic slope {elastic.slope:.3g}")
    if SegmentFlag.SLOPE_ORDER_VIOLATION in seg.flags:
        reasons.append("slope order violation")

    try:
        pf = pore_fraction(seg)
    except MembraneMechError as exc:
        reasons.append(str(exc).split(": ", 1)[-1])
    else:
        if pf > 1.0 and cfg.fail_on_pore_fraction_gt_1:
            reasons.append(f"pore fraction {pf:.3f} > 1")

    return CurveVerdict(
        position_index=seg.position_index, passed=not reasons, reasons=tuple(reasons)
    )


def assess_quality(
    segs: Sequence[SegmentationResult],
    cfg: Optional[QualityConfig] = None,
    sample_id: Optional[str] = None,
) -> QualityReport:
    """
    Mark each curve pass/fail and decide the sample.

    The sample passes when at least ``min_pass_fraction`` of its curves
    pass (boundary inclusive). Always returns a report; an empty input
    yields a failing one.
    """
    cfg = cfg or QualityConfig()
    sid = sample_id or (segs[0].sample_id if segs else "")
    verdicts = [judge_curve(seg, cfg) for seg in segs]
    if not verdicts:
        logger.warning("%s: no curves to assess", sid)
        return QualityReport(sample_id=sid)

    fraction = sum(v.passed for v in verdicts) / len(verdicts)
    passed = fraction >= cfg.min_pass_fraction
    report = QualityReport(
        sample_id=sid, verdicts=verdicts, pass_fraction=fraction, passed=passed
    )
    if not passed:
        logger.warning("%s: quality fail (%s)", sid, "; ".join(report.reasons))
    return report
