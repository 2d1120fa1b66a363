"""Generator specs and ground-truth records."""

from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from ..errors import SpecError


class CreepSpec(BaseModel):
    """Constant-stress hold appended after loading."""

    model_config = ConfigDict(frozen=True)

    hold_stress: float = Field(..., gt=0, description="bar")
    duration: float = Field(..., gt=0, description="s")
    creep_strain: float = Field(..., ge=0)
    n_points: int = Field(400, ge=4)


class CurveSpec(BaseModel):
    """
    Trilinear compression curve: elastic, plateau, densification.

    Stress is continuous, so the plateau/densification lines meet exactly
    at ``densification_onset_strain``, which is therefore the ground-truth
    pore fraction. Loading stops at ``max_stress`` (or at the creep hold
    stress when a hold is requested).
    """

    model_config = ConfigDict(frozen=True)

    elastic_modulus: float = Field(..., gt=0, description="bar")
    yield_strain: float = Field(..., gt=0)
    plateau_slope: float = Field(..., description="bar")
    densification_onset_strain: float = Field(..., gt=0)
    densification_slope: float = Field(..., gt=0, description="bar")
    creep: Optional[CreepSpec] = None
    noise_sigma: float = Field(0.0, ge=0, description="Force noise, expressed in bar")
    seed: int = 0
    n_points: int = Field(2000, ge=16)
    thickness: float = Field(100.0, gt=0, description="um")
    pin_diameter: float = Field(5.0, gt=0, description="mm")
    max_stress: float = Field(150.0, gt=0, description="bar")
    displacement_rate: float = Field(1.0, gt=0, description="um/s")
    pre_contact_points: int = Field(0, ge=0)

    @property
    def yield_stress(self) -> float:
        return self.elastic_modulus * self.yield_strain

    @property
    def onset_stress(self) -> float:
        return self.yield_stress + self.plateau_slope * (
            self.densification_onset_strain - self.yield_strain
        )

    @property
    def final_stress(self) -> float:
        return self.creep.hold_stress if self.creep else self.max_stress

    @property
    def final_strain(self) -> float:
        return self.densification_onset_strain + (
            self.final_stress - self.onset_stress
        ) / self.densification_slope

    def check(self) -> "CurveSpec":
        """
        Enforce slope ordering, breakpoint ordering and reachable end stress.

        Raises:
            SpecError: Any invariant fails.
        """
        if not self.elastic_modulus > self.plateau_slope:
            raise SpecError("elastic modulus must exceed plateau slope")
        if not self.densification_slope > self.plateau_slope:
            raise SpecError("densification slope must exceed plateau slope")
        if not 0 < self.yield_strain < self.densification_onset_strain:
            raise SpecError("need 0 < yield_strain < densification_onset_strain")
        if not self.final_stress > self.onset_stress:
            raise SpecError(
                f"end stress {self.final_stress} bar not above onset stress "
                f"{self.onset_stress:.4g} bar"
            )
        return self


class GroundTruth(BaseModel):
    """What a perfect analysis of a generated curve should report."""

    model_config = ConfigDict(frozen=True)

    elastic_modulus: float
    yield_strength: float
    pore_fraction: float
    plateau_slope: float
    densification_slope: float
    breakpoints: List[float]
    creep_strain: Optional[float] = None
    contact_strain: float = 0.0
    max_strain: float
    seed: int


class DiskSpec(BaseModel):
    """One circular pore; ``center`` is in nm, None for random placement."""

    model_config = ConfigDict(frozen=True)

    diameter: float = Field(..., gt=0, description="nm")
    center: Optional[Tuple[float, float]] = None
