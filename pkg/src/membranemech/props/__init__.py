"""Mechanical properties from segmented curves."""

from .extract import (
    PARALLEL_TOLERANCE,
    compressibility,
    creep_strain,
    elastic_modulus,
    extract_properties,
    pore_fraction,
    yield_strength,
)
from .models import MechanicalProperties, PropertyFlag

__all__ = [
    "PARALLEL_TOLERANCE",
    "MechanicalProperties",
    "PropertyFlag",
    "compressibility",
    "creep_strain",
    "elastic_modulus",
    "extract_properties",
    "pore_fraction",
    "yield_strength",
]
