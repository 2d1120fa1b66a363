"""
``.meta`` sidecar files.

Each data file ``<name>.csv`` (or mask ``<name>.png``) may sit next to a
``<name>.meta`` file holding ``key: value`` lines::

    sample_id: M17
    thickness_um: 85
    pin_diameter_mm: 5
    polymer_wt_pct: 17
    humidity_pct: 42
    nitrogen: false
    position_index: 2
"""

import logging
from pathlib import Path
from typing import Any, Dict, Union

import yaml

from ..errors import SchemaError
from ..models.base import SampleMetadata

logger = logging.getLogger("membranemech.ingest")

META_SUFFIX = ".meta"


def sidecar_path(data_path: Union[str, Path]) -> Path:
    """Return the ``.meta`` path that belongs to ``data_path``."""
    return Path(data_path).with_suffix(META_SUFFIX)


def read_sidecar(path: Union[str, Path]) -> Dict[str, Any]:
    """
    Read a sidecar as a plain mapping.

    Raises:
        FileNotFoundError: The sidecar does not exist.
        SchemaError: The file is not a ``key: value`` mapping.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Metadata sidecar not found: {path}")
    raw = yaml.safe_load(path.read_text(encoding="utf-8"))
    if not isinstance(raw, dict):
        raise SchemaError(f"{path}: sidecar must contain key: value lines")
    return raw


def read_sample_metadata(path: Union[str, Path]) -> SampleMetadata:
    """Read and validate a compression-test sidecar."""
    raw = read_sidecar(path)
    if "sample_id" not in raw:
        raise SchemaError(f"{path}: missing key 'sample_id'", column="sample_id")
    raw["sample_id"] = str(raw["sample_id"])
    return SampleMetadata.model_validate(raw)


def write_sample_metadata(meta: SampleMetadata, path: Union[str, Path]) -> Path:
    """Write ``meta`` as a sidecar with a stable key order."""
    path = Path(path)
    data = meta.model_dump(mode="json", exclude_none=True)
    path.write_text(yaml.safe_dump(data, sort_keys=False), encoding="utf-8")
    logger.debug("wrote sidecar %s", path)
    return path
