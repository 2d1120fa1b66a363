"""Instrument parsing, unit conversion and contact alignment."""

from .conversion import BAR_PER_MPA, align_contact, check_geometry, to_stress_strain
from .metadata import (
    META_SUFFIX,
    read_sample_metadata,
    read_sidecar,
    sidecar_path,
    write_sample_metadata,
)
from .parser import (
    ForceDisplacementParser,
    parse_force_displacement,
    read_force_displacement,
    write_force_displacement,
)

__all__ = [
    "BAR_PER_MPA",
    "META_SUFFIX",
    "ForceDisplacementParser",
    "align_contact",
    "check_geometry",
    "parse_force_displacement",
    "read_force_displacement",
    "read_sample_metadata",
    "read_sidecar",
    "sidecar_path",
    "to_stress_strain",
    "write_force_displacement",
    "write_sample_metadata",
]
