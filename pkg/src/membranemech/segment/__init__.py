"""Smoothing, breakpoint search and region labelling."""

from .breakpoints import curvature_seeds, find_breakpoints, piecewise_sse
from .models import (
    DerivativeProfile,
    RegionFit,
    RegionLabel,
    SegmentationResult,
    SegmentFlag,
    SegmentStatus,
)
from .records import (
    RECORD_HEADER,
    format_segmentation_record,
    parse_segmentation_record,
    read_segmentation_record,
    write_segmentation_record,
)
from .segmenter import detect_creep, fit_loading_regions, segment_curve
from .smoothing import profile_from_arrays, resample_uniform, smooth_and_differentiate

__all__ = [
    "RECORD_HEADER",
    "DerivativeProfile",
    "RegionFit",
    "RegionLabel",
    "SegmentFlag",
    "SegmentStatus",
    "SegmentationResult",
    "curvature_seeds",
    "detect_creep",
    "find_breakpoints",
    "fit_loading_regions",
    "format_segmentation_record",
    "parse_segmentation_record",
    "piecewise_sse",
    "profile_from_arrays",
    "read_segmentation_record",
    "resample_uniform",
    "segment_curve",
    "smooth_and_differentiate",
    "write_segmentation_record",
]
