"""Stock solutions and dilution plans."""

from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field


class ViscosityModel(BaseModel):
    """log10(viscosity / Pa*s) = alpha + beta * concentration (wt%)."""

    model_config = ConfigDict(frozen=True)

    alpha: float = -2.0
    beta: float = 0.18

    def viscosity(self, concentration: float) -> float:
        return float(10.0 ** (self.alpha + self.beta * concentration))


class Stock(BaseModel):
    """A polymer solution available for blending."""

    model_config = ConfigDict(frozen=True)

    label: str = Field(..., min_length=1)
    concentration: float = Field(..., ge=0, lt=100, description="wt% polymer")
    density: float = Field(1.0, gt=0, description="g/mL")
    viscosity_model: Optional[ViscosityModel] = None


class PlanComponent(BaseModel):
    model_config = ConfigDict(frozen=True)

    label: str
    concentration: float
    mass_g: float = Field(..., ge=0)
    volume_ml: float = Field(..., ge=0)


class DilutionPlan(BaseModel):
    """
    Masses and volumes to blend for one target concentration.

    Components with zero mass are omitted, so a target equal to a stock
    concentration yields a single component.
    """

    model_config = ConfigDict(frozen=True)

    components: List[PlanComponent]
    target_concentration: float = Field(..., description="wt%")
    total_mass: float = Field(..., gt=0, description="g")
    viscosity_ratio: float = Field(..., ge=1)
    warning: Optional[str] = None

    @property
    def polymer_mass(self) -> float:
        """Grams of polymer delivered by all components."""
        return sum(c.mass_g * c.concentration / 100.0 for c in self.components)

    def mass_of(self, label: str) -> float:
        """Mass of the component ``label``, 0 when absent."""
        return sum(c.mass_g for c in self.components if c.label == label)
