"""
Base data models for membranemech.

Parsers produce ``RawCurve``; the ingest stage turns it into a
``StressStrainCurve``. All downstream stages consume these models.
"""

from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..errors import TooFewSamplesError

#: Minimum number of samples a curve needs for analysis.
MIN_SAMPLES = 16


class CurveFlag(str, Enum):
    """Curve-level warnings raised during preprocessing."""

    NEGATIVE_STRESS_CLAMPED = "negative_stress_clamped"
    NON_MONOTONE_STRAIN = "non_monotone_strain"


class FabricationMethod(str, Enum):
    """How the membrane solution was prepared and cast."""

    MANUAL_PREMIXED = "manual_premixed"
    AUTO_PREMIXED = "auto_premixed"
    AUTO_MIXED = "auto_mixed"


class RawCurve(BaseModel):
    """
    Time/force/displacement samples from a single compression test.

    Samples are stored column-wise; ``time[i]``, ``force[i]`` and
    ``displacement[i]`` belong to the same instrument reading.
    """

    model_config = ConfigDict(frozen=True)

    sample_id: str = Field(..., description="Membrane identifier")
    position_index: int = Field(0, ge=0, description="Test location on the membrane")
    time: List[float] = Field(default_factory=list, description="Seconds")
    force: List[float] = Field(default_factory=list, description="Newtons")
    displacement: List[float] = Field(default_factory=list, description="Micrometres")

    def __len__(self) -> int:
        return len(self.time)

    def validate_curve(self) -> "RawCurve":
        """
        Check the analysis invariants and return self.

        Raises:
            TooFewSamplesError: Fewer than ``MIN_SAMPLES`` rows.
            ValueError: Non-finite values or time not strictly increasing.
        """
        n = len(self.time)
        if n < MIN_SAMPLES:
            raise TooFewSamplesError(
                f"{self.sample_id}: too few samples ({n} < {MIN_SAMPLES})"
            )
        if len(self.force) != n or len(self.displacement) != n:
            raise ValueError(f"{self.sample_id}: column lengths differ")
        t = np.asarray(self.time)
        if not np.all(np.isfinite(t)) or np.any(np.diff(t) <= 0):
            raise ValueError(f"{self.sample_id}: time must be finite and strictly increasing")
        if not np.all(np.isfinite(self.force)) or not np.all(np.isfinite(self.displacement)):
            raise ValueError(f"{self.sample_id}: force and displacement must be finite")
        return self


class SampleGeometry(BaseModel):
    """Specimen geometry and fabrication conditions."""

    model_config = ConfigDict(frozen=True)

    pin_diameter_mm: float = Field(5.0, gt=0, description="Flat punch diameter")
    thickness_um: float = Field(..., gt=0, description="Membrane thickness")
    polymer_wt_pct: float = Field(..., gt=0, lt=100, description="Polymer concentration")
    humidity_pct: Optional[float] = Field(None, ge=0, le=100, description="Relative humidity")
    nitrogen_treated: bool = False

    @property
    def pin_area_mm2(self) -> float:
        """Contact area of the compression pin."""
        return float(np.pi * (self.pin_diameter_mm / 2.0) ** 2)


class StressStrainCurve(BaseModel):
    """
    Engineering stress (bar) vs. engineering strain, one compression test.

    ``alignment_offset`` is ``None`` until ``align_contact`` has run; after
    alignment it holds the (strain, stress) pair that was removed.
    """

    model_config = ConfigDict(frozen=True)

    sample_id: str
    position_index: int = 0
    strain: List[float] = Field(default_factory=list)
    stress: List[float] = Field(default_factory=list, description="bar")
    time: List[float] = Field(default_factory=list, description="Seconds")
    geometry: SampleGeometry
    alignment_offset: Optional[Tuple[float, float]] = None
    flags: Tuple[CurveFlag, ...] = ()

    def __len__(self) -> int:
        return len(self.strain)

    @property
    def points(self) -> List[Tuple[float, float]]:
        """(strain, stress) pairs in test order."""
        return list(zip(self.strain, self.stress))

    @property
    def is_aligned(self) -> bool:
        return self.alignment_offset is not None

    def arrays(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Return (strain, stress, time) as float arrays."""
        return (
            np.asarray(self.strain, dtype=float),
            np.asarray(self.stress, dtype=float),
            np.asarray(self.time, dtype=float),
        )


class SampleMetadata(BaseModel):
    """
    Contents of a ``.meta`` sidecar describing one compression test.

    Keys mirror the sidecar file: ``thickness_um``, ``pin_diameter_mm``,
    ``polymer_wt_pct``, ``humidity_pct``, ``nitrogen``, ``position_index``.
    """

    sample_id: str
    thickness_um: float = Field(..., gt=0)
    pin_diameter_mm: float = Field(5.0, gt=0)
    polymer_wt_pct: float = Field(..., gt=0, lt=100)
    humidity_pct: Optional[float] = Field(None, ge=0, le=100)
    nitrogen: bool = False
    position_index: int = Field(0, ge=0)
    fabrication_method: Optional[FabricationMethod] = None

    def to_geometry(self) -> SampleGeometry:
        return SampleGeometry(
            pin_diameter_mm=self.pin_diameter_mm,
            thickness_um=self.thickness_um,
            polymer_wt_pct=self.polymer_wt_pct,
            humidity_pct=self.humidity_pct,
            nitrogen_treated=self.nitrogen,
        )
