"""Shared curve models."""

from .base import (
    MIN_SAMPLES,
    CurveFlag,
    FabricationMethod,
    RawCurve,
    SampleGeometry,
    SampleMetadata,
    StressStrainCurve,
)

__all__ = [
    "MIN_SAMPLES",
    "CurveFlag",
    "FabricationMethod",
    "RawCurve",
    "SampleGeometry",
    "SampleMetadata",
    "StressStrainCurve",
]
