"""
Configuration loader for membranemech.

Reads a YAML key-value file that overrides analysis defaults. Supports
``${ENV_VAR}`` substitution in values. When no path is given, the
``MEMBRANE_MECH_CONFIG`` environment variable is consulted.

Example config::

    align:
      contact_fraction: 0.005
      contact_run: 5

    segment:
      min_r2: 0.95
      smooth:
        grid_points: 512
        bandwidth_fraction: 0.05

    formulate:
      warning_ratio: 50
      densities:
        psf17: 1.12
        polarclean: 1.04

    psd:
      coating_nm: 1.8

    campaign:
      rh_threshold: 49
      jobs: 4
"""

import os
import re
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field

CONFIG_ENV_VAR = "MEMBRANE_MECH_CONFIG"

_ENV_PATTERN = re.compile(r"\$\{(\w+)}")


def _substitute_env(value: Any) -> Any:
    """Recursively substitute ``${VAR}`` with environment variable values."""
    if isinstance(value, str):
        def _replacer(m: re.Match) -> str:
            return os.environ.get(m.group(1), "")
        return _ENV_PATTERN.sub(_replacer, value)
    if isinstance(value, dict):
        return {k: _substitute_env(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_substitute_env(v) for v in value]
    return value


def deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    """Return ``base`` with ``override`` merged in, recursing into mappings."""
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class IngestConfig(BaseModel):
    """Plausibility checks applied when building stress-strain curves."""

    thickness_min_um: float = Field(20.0, gt=0)
    thickness_max_um: float = Field(500.0, gt=0)
    default_pin_diameter_mm: float = Field(5.0, gt=0)


class AlignConfig(BaseModel):
    """Contact detection and toe removal."""

    contact_fraction: float = Field(
        0.005, gt=0, lt=1, description="Contact threshold as a fraction of max stress"
    )
    contact_run: int = Field(5, ge=1, description="Samples that must stay above threshold")
    toe_fit_fraction: float = Field(
        0.03, gt=0, lt=1, description="Upper stress (fraction of max) for the toe line fit"
    )
    toe_fit_points: int = Field(8, ge=2, description="Minimum points in the toe line fit")
    noise_floor_bar: float = Field(0.2, ge=0, description="Negative stress clamp level")
    offset_tolerance: float = Field(1e-9, ge=0, description="Strain offsets below this are zero")
    monotonic_tolerance: float = Field(1e-3, ge=0)


class SmoothConfig(BaseModel):
    """Local cubic smoothing on a uniform strain grid."""

    grid_points: int = Field(512, ge=16)
    bandwidth_fraction: float = Field(0.05, gt=0, lt=1)
    polyorder: int = Field(3, ge=2, le=5)


class SegmentConfig(BaseModel):
    """Breakpoint search, creep detection and region-fit criteria."""

    smooth: SmoothConfig = Field(default_factory=SmoothConfig)
    boundary_trim: float = Field(0.05, ge=0, lt=0.5)
    peak_rel_height: float = Field(
        0.5, gt=0, description="Curvature peak threshold relative to max slope / strain span"
    )
    min_peak_separation: float = Field(0.05, gt=0, lt=1)
    min_region_points: int = Field(4, ge=2)
    min_sse_reduction: float = Field(
        0.5, gt=0, lt=1, description="Required SSE drop vs a single line when unseeded"
    )
    max_sweeps: int = Field(10, ge=1)
    fit_trim_fraction: float = Field(0.05, ge=0, lt=0.5)
    min_r2: float = Field(0.95, ge=0, le=1)
    min_plateau_fraction: float = Field(0.05, ge=0, lt=1)
    creep_stress_tolerance: float = Field(0.01, gt=0)
    creep_min_duration_fraction: float = Field(0.05, gt=0, lt=1)
    creep_smoothing_window: int = Field(9, ge=1)


class QualityConfig(BaseModel):
    """Consistency grid and pass/fail criteria."""

    cv_grid_points: int = Field(200, ge=2)
    min_r2: float = Field(0.95, ge=0, le=1)
    min_pass_fraction: float = Field(0.75, ge=0, le=1)
    fail_on_pore_fraction_gt_1: bool = False


class FormulateConfig(BaseModel):
    """Stock densities and the log-linear viscosity model."""

    default_density: float = Field(1.0, gt=0, description="g/mL when a stock has no entry")
    densities: Dict[str, float] = Field(default_factory=dict)
    viscosity_alpha: float = Field(-2.0, description="log10(Pa*s) at 0 wt%")
    viscosity_beta: float = Field(0.18, description="log10(Pa*s) per wt%")
    warning_ratio: float = Field(50.0, gt=1)


class PsdConfig(BaseModel):
    """Pore-size distribution settings."""

    bin_nm: float = Field(0.5, gt=0)
    coating_nm: float = Field(1.8, ge=0)
    exclude_border: bool = False
    mask_threshold: int = Field(127, ge=0, le=254)


class CampaignConfig(BaseModel):
    """Batch runner settings."""

    rh_threshold: float = Field(49.0, ge=0, le=100)
    jobs: Optional[int] = Field(None, ge=1, description="Worker processes; None = CPU count")
    output_format: str = Field("csv", description="csv or json-lines")


class MembraneMechConfig(BaseModel):
    """
    Top-level configuration model.

    Loaded from a YAML file via ``load_config()``; every section has
    working defaults, so an empty file is valid.
    """

    ingest: IngestConfig = Field(default_factory=IngestConfig)
    align: AlignConfig = Field(default_factory=AlignConfig)
    segment: SegmentConfig = Field(default_factory=SegmentConfig)
    quality: QualityConfig = Field(default_factory=QualityConfig)
    formulate: FormulateConfig = Field(default_factory=FormulateConfig)
    psd: PsdConfig = Field(default_factory=PsdConfig)
    campaign: CampaignConfig = Field(default_factory=CampaignConfig)

    def with_overrides(self, overrides: Dict[str, Any]) -> "MembraneMechConfig":
        """Return a copy with ``overrides`` deep-merged over this config."""
        if not overrides:
            return self
        merged = deep_merge(self.model_dump(), _substitute_env(overrides))
        return MembraneMechConfig.model_validate(merged)


def load_config(path: str | Path) -> MembraneMechConfig:
    """
    Load and validate a membranemech YAML config file.

    Environment variables in ``${VAR}`` format are substituted
    before validation.

    Args:
        path: Path to the YAML config file.

    Returns:
        A validated ``MembraneMechConfig`` instance.

    Raises:
        FileNotFoundError: If the config file doesn't exist.
    """
    import yaml

    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Config file not found: {path}")

    raw = yaml.safe_load(path.read_text(encoding="utf-8"))
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ValueError(f"Config file {path} must contain a mapping")

    substituted = _substitute_env(raw)
    return MembraneMechConfig.model_validate(substituted)


def resolve_config(path: Optional[str | Path] = None) -> MembraneMechConfig:
    """
    Resolve the active configuration.

    An explicit ``path`` wins; otherwise ``$MEMBRANE_MECH_CONFIG`` is used
    when set; otherwise the built-in defaults apply.
    """
    if path:
        return load_config(path)
    env_path = os.environ.get(CONFIG_ENV_VAR)
    if env_path:
        return load_config(env_path)
    return MembraneMechConfig()
