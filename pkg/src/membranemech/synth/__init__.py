"""Ground-truth generators for curves, masks and whole campaigns."""

from .campaign import GROUP_CONDITIONS, MANIFEST_NAME, campaign_spec, generate_campaign
from .curves import (
    TRUTH_SUFFIX,
    generate_curve,
    ground_truth,
    read_ground_truth,
    stress_at,
    truth_path,
    write_synthetic_sample,
)
from .masks import analytic_porosity, generate_disk_mask
from .models import CreepSpec, CurveSpec, DiskSpec, GroundTruth

__all__ = [
    "GROUP_CONDITIONS",
    "MANIFEST_NAME",
    "TRUTH_SUFFIX",
    "CreepSpec",
    "CurveSpec",
    "DiskSpec",
    "GroundTruth",
    "analytic_porosity",
    "campaign_spec",
    "generate_campaign",
    "generate_curve",
    "generate_disk_mask",
    "ground_truth",
    "read_ground_truth",
    "stress_at",
    "truth_path",
    "write_synthetic_sample",
]
