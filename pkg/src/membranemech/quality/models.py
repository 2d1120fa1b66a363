"""Consistency and pass/fail records."""

from typing import Dict, List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class StressGrid(BaseModel):
    """Uniform stress axis shared by the curves of one sample (bar)."""

    model_config = ConfigDict(frozen=True)

    start: float
    stop: float
    n_points: int = Field(..., ge=2)

    @classmethod
    def from_values(cls, values: np.ndarray) -> "StressGrid":
        return cls(start=float(values[0]), stop=float(values[-1]), n_points=int(values.size))

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.n_points)


class ConsistencyReport(BaseModel):
    """
    Intra-sample coefficient of variation.

    ``cv`` is the grid-averaged sample standard deviation of strain divided
    by the grand mean strain over all curves and grid points.
    """

    model_config = ConfigDict(frozen=True)

    sample_id: str
    n_curves: int = Field(..., ge=2)
    cv: float = Field(..., ge=0)
    stress_grid: StressGrid
    mean_strain: float = Field(..., gt=0)
    per_curve_flags: Dict[int, Tuple[str, ...]] = Field(default_factory=dict)


class CurveVerdict(BaseModel):
    """Pass/fail outcome for one test position."""

    model_config = ConfigDict(frozen=True)

    position_index: int
    passed: bool
    reasons: Tuple[str, ...] = ()


class QualityReport(BaseModel):
    """Fitting success criteria applied to all curves of one sample."""

    model_config = ConfigDict(frozen=True)

    sample_id: str
    verdicts: List[CurveVerdict] = Field(default_factory=list)
    pass_fraction: float = Field(0.0, ge=0, le=1)
    passed: bool = False

    @property
    def n_curves(self) -> int:
        return len(self.verdicts)

    @property
    def n_passed(self) -> int:
        return sum(v.passed for v in self.verdicts)

    @property
    def reasons(self) -> List[str]:
        """Failure reasons prefixed by position, in position order."""
        return [
            f"{v.position_index}:{reason}"
            for v in sorted(self.verdicts, key=lambda v: v.position_index)
            for reason in v.reasons
            if not v.passed
        ]
