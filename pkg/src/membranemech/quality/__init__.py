"""Intra-sample consistency and fitting success criteria."""

from .assessment import assess_quality, judge_curve
from .consistency import DEFAULT_GRID_POINTS, common_stress_axis, intra_sample_cv, monotone_inverse
from .models import ConsistencyReport, CurveVerdict, QualityReport, StressGrid
from .summary import SUMMARY_COLUMNS, summarize_cv

__all__ = [
    "DEFAULT_GRID_POINTS",
    "SUMMARY_COLUMNS",
    "ConsistencyReport",
    "CurveVerdict",
    "QualityReport",
    "StressGrid",
    "assess_quality",
    "common_stress_axis",
    "intra_sample_cv",
    "judge_curve",
    "monotone_inverse",
    "summarize_cv",
]
