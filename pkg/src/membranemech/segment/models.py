"""
Segmentation models.

A stress-strain curve of a porous membrane splits into elastic, plateau
and densification regions, plus a creep region when the test ends in a
constant-force hold.
"""

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class RegionLabel(str, Enum):
    """Region labels in strain order."""

    ELASTIC = "elastic"
    PLATEAU = "plateau"
    DENSIFICATION = "densification"
    CREEP = "creep"


class SegmentFlag(str, Enum):
    """Structural warnings attached to a segmentation."""

    SLOPE_ORDER_VIOLATION = "slope_order_violation"
    LOW_R2 = "low_r2"
    NO_PLATEAU = "no_plateau"


class SegmentStatus(str, Enum):
    OK = "ok"
    FAILED = "failed"


class RegionFit(BaseModel):
    """
    Least-squares line over one region.

    For elastic/plateau/densification the fit is stress (bar) vs strain.
    For creep it is strain vs time (s) at near-constant stress, so
    ``slope`` is a strain rate and ``intercept`` a strain.
    """

    model_config = ConfigDict(frozen=True)

    label: RegionLabel
    strain_range: Tuple[float, float]
    slope: float
    intercept: float
    r_squared: float = Field(..., ge=0, le=1)
    point_count: int = Field(..., ge=0)

    def evaluate(self, strain: float) -> float:
        """Stress predicted by a stress-strain fit at ``strain``."""
        return self.slope * strain + self.intercept

    @property
    def width(self) -> float:
        return self.strain_range[1] - self.strain_range[0]


class SegmentationResult(BaseModel):
    """
    Breakpoints and per-region fits for one curve.

    A failed segmentation keeps ``status = failed`` and a reason so the
    quality stage can count it; its breakpoints and regions are empty.
    """

    model_config = ConfigDict(frozen=True)

    sample_id: str
    position_index: int = 0
    status: SegmentStatus = SegmentStatus.OK
    failure_reason: Optional[str] = None
    breakpoints: List[float] = Field(default_factory=list)
    regions: List[RegionFit] = Field(default_factory=list)
    has_creep: bool = False
    flags: Tuple[SegmentFlag, ...] = ()

    @classmethod
    def failed(cls, sample_id: str, position_index: int, reason: str) -> "SegmentationResult":
        return cls(
            sample_id=sample_id,
            position_index=position_index,
            status=SegmentStatus.FAILED,
            failure_reason=reason,
        )

    @property
    def ok(self) -> bool:
        return self.status is SegmentStatus.OK

    @property
    def curve_ref(self) -> Tuple[str, int]:
        return self.sample_id, self.position_index

    def region(self, label: RegionLabel) -> Optional[RegionFit]:
        """Return the fit for ``label`` or None."""
        for fit in self.regions:
            if fit.label == label:
                return fit
        return None

    @property
    def span(self) -> Tuple[float, float]:
        """Strain span covered by all regions."""
        if not self.regions:
            return (0.0, 0.0)
        return self.regions[0].strain_range[0], self.regions[-1].strain_range[1]


@dataclass(frozen=True, eq=False)
class DerivativeProfile:
    """
    Smoothed stress and its strain derivatives on a uniform grid.

    ``stress`` is the curve resampled onto ``strain`` without smoothing;
    ``smoothed``, ``d1`` and ``d2`` come from the local cubic smoother.
    """

    strain: np.ndarray
    stress: np.ndarray
    smoothed: np.ndarray
    d1: np.ndarray
    d2: np.ndarray

    @property
    def step(self) -> float:
        return float(self.strain[1] - self.strain[0])

    @property
    def span(self) -> float:
        return float(self.strain[-1] - self.strain[0])

    def __len__(self) -> int:
        return int(self.strain.size)
