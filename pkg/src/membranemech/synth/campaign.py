"""
Synthetic campaign: concentrations x humidity groups, several test
positions per membrane, plus the manifest the runner reads.

Modulus rises and pore fraction falls with polymer concentration in every
group, so trend fits over the generated campaign have known signs.
"""

import logging
from pathlib import Path
from typing import Dict, List, Sequence, Union

import numpy as np
import yaml

from ..models.base import FabricationMethod
from .curves import write_synthetic_sample
from .models import CurveSpec

logger = logging.getLogger("membranemech.synth")

MANIFEST_NAME = "manifest.yaml"

#: humidity_pct and nitrogen per humidity group
GROUP_CONDITIONS: Dict[str, Dict] = {
    "rh_ge_49": {"humidity_pct": 55.0, "nitrogen": False},
    "rh_lt_49": {"humidity_pct": 40.0, "nitrogen": False},
    "nitrogen": {"humidity_pct": 40.0, "nitrogen": True},
}

_GROUP_MODULUS_OFFSET = {"rh_ge_49": 0.0, "rh_lt_49": -10.0, "nitrogen": 20.0}
_GROUP_PORE_OFFSET = {"rh_ge_49": 0.0, "rh_lt_49": 0.03, "nitrogen": -0.03}


def campaign_spec(concentration: float, group: str, **overrides) -> CurveSpec:
    """Nominal curve for one (concentration, group) cell."""
    modulus = 120.0 + 15.0 * (concentration - 10.0) + _GROUP_MODULUS_OFFSET.get(group, 0.0)
    pore = 0.85 - 0.035 * (concentration - 10.0) + _GROUP_PORE_OFFSET.get(group, 0.0)
    params = dict(
        elastic_modulus=modulus,
        yield_strain=25.0 / modulus,
        plateau_slope=15.0,
        densification_onset_strain=pore,
        densification_slope=450.0,
        n_points=1500,
    )
    params.update(overrides)
    return CurveSpec(**params).check()


def generate_campaign(
    directory: Union[str, Path],
    concentrations: Sequence[float] = (10.0, 12.0, 15.0, 17.0),
    groups: Sequence[str] = tuple(GROUP_CONDITIONS),
    positions: int = 4,
    seed: int = 0,
    noise_fraction: float = 0.0,
    jitter: float = 0.02,
    n_points: int = 1500,
) -> Path:
    """
    Write every sample of a synthetic campaign and its manifest.

    Each position gets its own seed and a multiplicative jitter of up to
    ``jitter`` on modulus and pore fraction. Returns the manifest path.
    """
    directory = Path(directory)
    data_dir = directory / "data"
    rng = np.random.default_rng(seed)
    samples: List[Dict] = []

    for group in groups:
        if group not in GROUP_CONDITIONS:
            raise ValueError(f"unknown humidity group {group!r}")
        for conc in concentrations:
            sample_id = f"c{conc:g}-{group}"
            nominal = campaign_spec(conc, group, n_points=n_points)
            files = []
            for pos in range(positions):
                scale_e, scale_p = 1.0 + jitter * rng.uniform(-1.0, 1.0, size=2)
                spec = nominal.model_copy(
                    update={
                        "elastic_modulus": nominal.elastic_modulus * scale_e,
                        "yield_strain": nominal.yield_strain / scale_e,
                        "densification_onset_strain": nominal.densification_onset_strain
                        * scale_p,
                        "noise_sigma": noise_fraction * nominal.max_stress,
                        "seed": int(rng.integers(0, 2**31 - 1)),
                    }
                ).check()
                path = write_synthetic_sample(
                    spec,
                    data_dir,
                    sample_id,
                    position_index=pos,
                    polymer_wt_pct=conc,
                    fabrication_method=FabricationMethod.AUTO_PREMIXED,
                    **GROUP_CONDITIONS[group],
                )
                files.append(str(path.relative_to(directory)))
            samples.append({"sample_id": sample_id, "files": files})

    manifest = {"root": ".", "output_dir": "results", "samples": samples}
    manifest_path = directory / MANIFEST_NAME
    manifest_path.write_text(yaml.safe_dump(manifest, sort_keys=False), encoding="utf-8")
    logger.info("wrote synthetic campaign of %d samples to %s", len(samples), directory)
    return manifest_path
