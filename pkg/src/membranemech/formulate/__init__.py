"""Dilution planning from stock solutions."""

from .dilution import (
    WORKLIST_COLUMNS,
    make_stock,
    plan_dilution,
    plan_series,
    plans_to_worklist,
    recommend_diluent,
    stock_consumption,
    viscosity,
    viscosity_ratio,
)
from .models import DilutionPlan, PlanComponent, Stock, ViscosityModel

__all__ = [
    "WORKLIST_COLUMNS",
    "DilutionPlan",
    "PlanComponent",
    "Stock",
    "ViscosityModel",
    "make_stock",
    "plan_dilution",
    "plan_series",
    "plans_to_worklist",
    "recommend_diluent",
    "stock_consumption",
    "viscosity",
    "viscosity_ratio",
]
