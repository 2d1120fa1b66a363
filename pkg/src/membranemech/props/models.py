"""Mechanical property records."""

from enum import Enum
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field


class PropertyFlag(str, Enum):
    """Warnings carried alongside extracted properties."""

    PORE_FRACTION_GT_1 = "pore_fraction_gt_1"
    NO_PLATEAU = "no_plateau"
    LOW_R2 = "low_r2"
    SLOPE_ORDER_VIOLATION = "slope_order_violation"
    ZERO_CREEP = "zero_creep"


class MechanicalProperties(BaseModel):
    """
    Properties of one compression test.

    ``pore_fraction`` is the raw plateau/densification intersection strain;
    values above 1 are kept and flagged rather than clamped.
    """

    model_config = ConfigDict(frozen=True)

    sample_id: str
    position_index: int = 0
    elastic_modulus: float = Field(..., gt=0, description="bar")
    yield_strength: float = Field(..., description="bar")
    pore_fraction: float = Field(..., description="Intersection strain")
    creep_strain: Optional[float] = Field(None, description="Strain accumulated under hold")
    compressibility: Optional[float] = Field(
        None, description="Maximum aligned strain reached under load"
    )
    flags: Tuple[PropertyFlag, ...] = ()

    def has_flag(self, flag: PropertyFlag) -> bool:
        return flag in self.flags
