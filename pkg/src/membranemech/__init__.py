"""
membranemech -- Compression-test and pore-structure analysis for membranes.

Stress-strain segmentation, property extraction, consistency scoring,
dilution planning and pore-size distributions.
"""

__version__ = "0.1.0"

# Configuration
from .config.loader import MembraneMechConfig, load_config, resolve_config

# Errors
from .errors import MembraneMechError

# Formulation
from .formulate.dilution import plan_dilution, recommend_diluent
from .formulate.models import DilutionPlan, Stock

# Ingest
from .ingest.conversion import align_contact, to_stress_strain
from .ingest.parser import parse_force_displacement, read_force_displacement

# Models
from .models.base import RawCurve, SampleGeometry, SampleMetadata, StressStrainCurve

# Properties
from .props.extract import extract_properties
from .props.models import MechanicalProperties

# Pore-size distributions
from .psd.distribution import aggregate_replicates, area_weighted_psd, dilate_mask
from .psd.models import AggregatedPSD, PoreMask, PoreSizeDistribution

# Quality
from .quality.assessment import assess_quality
from .quality.consistency import intra_sample_cv
from .quality.models import ConsistencyReport, QualityReport

# Campaigns
from .runner import CampaignManifest, CampaignReport, CampaignRunner, run_campaign

# Segmentation
from .segment.breakpoints import find_breakpoints
from .segment.models import RegionLabel, SegmentationResult
from .segment.segmenter import segment_curve
from .segment.smoothing import smooth_and_differentiate

# Synthetic data
from .synth.curves import generate_curve
from .synth.masks import generate_disk_mask
from .synth.models import CurveSpec, GroundTruth

# Trends
from .trends import TrendFit, fit_trend

__all__ = [
    # version
    "__version__",
    # config
    "MembraneMechConfig",
    "load_config",
    "resolve_config",
    # errors
    "MembraneMechError",
    # models
    "RawCurve",
    "SampleGeometry",
    "SampleMetadata",
    "StressStrainCurve",
    # ingest
    "align_contact",
    "parse_force_displacement",
    "read_force_displacement",
    "to_stress_strain",
    # segmentation
    "RegionLabel",
    "SegmentationResult",
    "find_breakpoints",
    "segment_curve",
    "smooth_and_differentiate",
    # properties
    "MechanicalProperties",
    "extract_properties",
    # quality
    "ConsistencyReport",
    "QualityReport",
    "assess_quality",
    "intra_sample_cv",
    # formulation
    "DilutionPlan",
    "Stock",
    "plan_dilution",
    "recommend_diluent",
    # pore-size distributions
    "AggregatedPSD",
    "PoreMask",
    "PoreSizeDistribution",
    "aggregate_replicates",
    "area_weighted_psd",
    "dilate_mask",
    # synthetic data
    "CurveSpec",
    "GroundTruth",
    "generate_curve",
    "generate_disk_mask",
    # campaigns and trends
    "CampaignManifest",
    "CampaignReport",
    "CampaignRunner",
    "TrendFit",
    "fit_trend",
    "run_campaign",
]
