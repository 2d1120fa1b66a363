"""
Domain errors raised across membranemech.

Every error derives from ``MembraneMechError``, itself a ``ValueError``,
so callers that only care about "bad input" can keep catching
``ValueError``.
"""

from typing import Optional


class MembraneMechError(ValueError):
    """Base class for all membranemech domain errors."""


class SchemaError(MembraneMechError):
    """A required column or key is missing from an input file."""

    def __init__(self, message: str, column: Optional[str] = None) -> None:
        super().__init__(message)
        self.column = column


class CellParseError(MembraneMechError):
    """A cell could not be converted to a finite number."""

    def __init__(self, message: str, row: int, column: str) -> None:
        super().__init__(message)
        self.row = row
        self.column = column


class TooFewSamplesError(MembraneMechError):
    """A curve has fewer samples than analysis requires."""


class GeometryError(MembraneMechError):
    """Sample geometry is non-physical or outside the plausibility band."""


class ContactNotFoundError(MembraneMechError):
    """No contact point: the pin never loaded the sample."""


class SegmentationError(MembraneMechError):
    """Breakpoint search could not separate the curve into regions."""


class MissingRegionError(MembraneMechError):
    """A property needs a region the segmentation does not contain."""


class NonPhysicalError(MembraneMechError):
    """A fitted quantity has a non-physical value (e.g. zero modulus)."""


class DegenerateIntersectionError(MembraneMechError):
    """Plateau and densification fits are parallel; no intersection."""


class EmptyOverlapError(MembraneMechError):
    """Curves share no common stress range."""


class InfeasibleTargetError(MembraneMechError):
    """A dilution target cannot be reached from the given stocks."""

    def __init__(self, message: str, target: Optional[float] = None) -> None:
        super().__init__(message)
        self.target = target


class BinMismatchError(MembraneMechError):
    """Replicate distributions were binned on different edges."""


class InsufficientReplicatesError(MembraneMechError):
    """Aggregation needs at least two replicates."""


class SpecError(MembraneMechError):
    """A synthetic generator spec violates its invariants."""


class ManifestError(MembraneMechError):
    """A campaign manifest is unreadable or references missing inputs."""
