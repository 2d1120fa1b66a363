"""Pore labelling, coating correction and area-weighted size distributions."""

from .batch import PsdBatchResult, analyze_masks, mask_paths
from .distribution import (
    DEFAULT_BIN_NM,
    aggregate_replicates,
    area_weighted_psd,
    corrected_diameter,
    default_max_diameter,
    dilate_mask,
    equivalent_diameter,
)
from .io import MASK_SUFFIXES, read_mask, read_mask_metadata, write_mask
from .labeling import EIGHT_CONNECTED, label_image, label_pores
from .models import AggregatedPSD, MaskMetadata, Pore, PoreMask, PoreSizeDistribution

__all__ = [
    "DEFAULT_BIN_NM",
    "EIGHT_CONNECTED",
    "MASK_SUFFIXES",
    "AggregatedPSD",
    "MaskMetadata",
    "Pore",
    "PoreMask",
    "PoreSizeDistribution",
    "PsdBatchResult",
    "aggregate_replicates",
    "analyze_masks",
    "area_weighted_psd",
    "corrected_diameter",
    "default_max_diameter",
    "dilate_mask",
    "equivalent_diameter",
    "label_image",
    "label_pores",
    "mask_paths",
    "read_mask",
    "read_mask_metadata",
    "write_mask",
]
