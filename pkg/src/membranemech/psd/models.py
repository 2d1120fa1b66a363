"""
Pore mask and pore-size distribution models.

Masks are boolean rasters with pore pixels set; ``scale`` converts pixels
to nanometres.
"""

import copy
from dataclasses import dataclass
from typing import List

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


@dataclass(frozen=True, eq=False)
class PoreMask:
    """Binary pore raster of shape (height, width)."""

    bits: np.ndarray
    scale: float
    replicate_id: str = ""
    group: str = ""
    corrected: bool = False

    def __post_init__(self) -> None:
        bits = np.asarray(self.bits, dtype=bool)
        if bits.ndim != 2:
            raise ValueError(f"mask must be 2-D, got shape {bits.shape}")
        if not self.scale > 0:
            raise ValueError(f"scale must be positive, got {self.scale}")
        if bits.all():
            raise ValueError("mask needs at least one background pixel")
        object.__setattr__(self, "bits", bits)

    @property
    def height(self) -> int:
        return int(self.bits.shape[0])

    @property
    def width(self) -> int:
        return int(self.bits.shape[1])

    @property
    def image_area_nm2(self) -> float:
        return self.scale**2 * self.width * self.height

    @property
    def pore_pixels(self) -> int:
        return int(self.bits.sum())

    def with_bits(self, bits: np.ndarray, corrected: bool) -> "PoreMask":
        """
        Copy with new ``bits`` of the same shape.

        The background-pixel rule only applies to input masks; a dilated
        mask may be entirely pore.
        """
        bits = np.asarray(bits, dtype=bool)
        if bits.shape != self.bits.shape:
            raise ValueError(f"shape {bits.shape} does not match mask {self.bits.shape}")
        derived = copy.copy(self)
        object.__setattr__(derived, "bits", bits)
        object.__setattr__(derived, "corrected", corrected)
        return derived


class Pore(BaseModel):
    """One connected pore."""

    model_config = ConfigDict(frozen=True)

    pore_id: int = Field(..., ge=1)
    pixel_area: int = Field(..., ge=1)
    touches_border: bool = False


class PoreSizeDistribution(BaseModel):
    """
    Area-weighted histogram of circular-equivalent pore diameters.

    ``area_fraction`` holds, per bin, the circular-equivalent area of the
    pores whose diameter falls in ``[edge_k, edge_k+1)`` divided by the
    image area.
    """

    model_config = ConfigDict(frozen=True)

    bin_edges: List[float]
    area_fraction: List[float]
    surface_porosity: float = Field(..., ge=0, le=100, description="%")
    corrected: bool = False
    replicate_id: str = ""
    group: str = ""
    n_pores: int = Field(0, ge=0)
    border_pores: int = Field(0, ge=0)

    @property
    def equivalent_porosity(self) -> float:
        """Porosity (%) implied by the histogram."""
        return float(np.sum(self.area_fraction) * 100.0)


class AggregatedPSD(BaseModel):
    """Per-bin mean and standard error over replicate images."""

    model_config = ConfigDict(frozen=True)

    bin_edges: List[float]
    mean: List[float]
    se: List[float]
    porosity_mean: float
    porosity_se: float
    n_replicates: int = Field(..., ge=2)
    corrected: bool = False
    group: str = ""


class MaskMetadata(BaseModel):
    """Contents of a mask ``.meta`` sidecar."""

    scale_nm_per_px: float = Field(..., gt=0)
    group: str = ""
    replicate_id: str = ""
