"""Configuration loading and validation."""

from .loader import (
    CONFIG_ENV_VAR,
    AlignConfig,
    CampaignConfig,
    FormulateConfig,
    IngestConfig,
    MembraneMechConfig,
    PsdConfig,
    QualityConfig,
    SegmentConfig,
    SmoothConfig,
    deep_merge,
    load_config,
    resolve_config,
)

__all__ = [
    "CONFIG_ENV_VAR",
    "AlignConfig",
    "CampaignConfig",
    "FormulateConfig",
    "IngestConfig",
    "MembraneMechConfig",
    "PsdConfig",
    "QualityConfig",
    "SegmentConfig",
    "SmoothConfig",
    "deep_merge",
    "load_config",
    "resolve_config",
]
