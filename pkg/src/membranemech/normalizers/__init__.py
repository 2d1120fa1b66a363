"""Normalizers for instrument exports."""

from .units import CANONICAL_COLUMNS, UNIT_FACTORS, normalize_header

__all__ = [
    "CANONICAL_COLUMNS",
    "UNIT_FACTORS",
    "normalize_header",
]
