"""
Directory-level PSD analysis.

Masks are grouped by their sidecar ``group``; every group gets a coated
and a dilation-corrected aggregate over shared bin edges. Unreadable
masks and groups with a single replicate become error records.
"""

import logging
from collections import OrderedDict
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Union

from pydantic import BaseModel, Field

from ..config.loader import PsdConfig
from ..errors import MembraneMechError
from .distribution import (
    aggregate_replicates,
    area_weighted_psd,
    default_max_diameter,
    dilate_mask,
)
from .io import MASK_SUFFIXES, read_mask
from .models import AggregatedPSD, PoreMask, PoreSizeDistribution

logger = logging.getLogger("membranemech.psd")


class PsdBatchResult(BaseModel):
    distributions: List[PoreSizeDistribution] = Field(default_factory=list)
    aggregates: List[AggregatedPSD] = Field(default_factory=list)
    errors: List[Dict[str, Any]] = Field(default_factory=list)

    def rows(self) -> List[Dict[str, Any]]:
        """Per-bin rows plus one porosity row (as an area fraction) per aggregate."""
        rows: List[Dict[str, Any]] = []
        for agg in self.aggregates:
            base = {
                "group": agg.group,
                "corrected": agg.corrected,
                "n_replicates": agg.n_replicates,
            }
            for left, right, mean, se in zip(agg.bin_edges, agg.bin_edges[1:], agg.mean, agg.se):
                rows.append(
                    {
                        **base,
                        "row_type": "bin",
                        "bin_left_nm": left,
                        "bin_right_nm": right,
                        "mean_area_fraction": mean,
                        "se_area_fraction": se,
                    }
                )
            rows.append(
                {
                    **base,
                    "row_type": "porosity",
                    "mean_area_fraction": agg.porosity_mean / 100.0,
                    "se_area_fraction": agg.porosity_se / 100.0,
                }
            )
        return rows


def mask_paths(directory: Union[str, Path]) -> List[Path]:
    return sorted(p for p in Path(directory).iterdir() if p.suffix.lower() in MASK_SUFFIXES)


def _error(group: str, file: str, stage: str, exc: Exception) -> Dict[str, Any]:
    return {
        "sample_id": group,
        "file": file,
        "stage": stage,
        "error_type": type(exc).__name__,
        "message": str(exc),
    }


def analyze_masks(
    paths: Iterable[Union[str, Path]],
    cfg: Optional[PsdConfig] = None,
) -> PsdBatchResult:
    """Coated and corrected PSDs for every mask, aggregated per group."""
    cfg = cfg or PsdConfig()
    result = PsdBatchResult()
    groups: "OrderedDict[str, List[PoreMask]]" = OrderedDict()
    for path in paths:
        path = Path(path)
        try:
            mask = read_mask(path, threshold=cfg.mask_threshold)
        except (MembraneMechError, ValueError, OSError) as exc:
            logger.warning("%s: unreadable mask: %s", path.name, exc)
            result.errors.append(_error("", path.name, "read", exc))
            continue
        groups.setdefault(mask.group, []).append(mask)

    for group, masks in sorted(groups.items()):
        # dilation can grow a pore by the coating on every side
        top = max(default_max_diameter(m) for m in masks) + 2.0 * cfg.coating_nm
        for corrected in (False, True):
            psds = [
                area_weighted_psd(
                    dilate_mask(m, cfg.coating_nm) if corrected else m,
                    bin_nm=cfg.bin_nm,
                    max_diameter=top,
                    exclude_border=cfg.exclude_border,
                )
                for m in masks
            ]
            result.distributions.extend(psds)
            try:
                result.aggregates.append(aggregate_replicates(psds))
            except MembraneMechError as exc:
                if not corrected:
                    logger.warning("group %r: %s", group, exc)
                    result.errors.append(_error(group, "", "aggregate", exc))
    logger.info(
        "%d masks in %d groups, %d aggregates",
        sum(len(m) for m in groups.values()),
        len(groups),
        len(result.aggregates),
    )
    return result
