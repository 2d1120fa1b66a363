"""
Mask files: 8-bit PGM or PNG, value > threshold is pore.

Each mask ``<name>.png`` has a ``<name>.meta`` sidecar::

    scale_nm_per_px: 0.9
    group: psf10_uncoated
    replicate_id: r1
"""

import logging
from pathlib import Path
from typing import Optional, Union

import numpy as np
from PIL import Image

from ..errors import SchemaError
from ..ingest.metadata import read_sidecar, sidecar_path
from .models import MaskMetadata, PoreMask

logger = logging.getLogger("membranemech.psd")

MASK_SUFFIXES = (".pgm", ".png")
DEFAULT_THRESHOLD = 127


def read_mask_metadata(path: Union[str, Path]) -> MaskMetadata:
    raw = read_sidecar(path)
    if "scale_nm_per_px" not in raw:
        raise SchemaError(f"{path}: missing key 'scale_nm_per_px'", column="scale_nm_per_px")
    return MaskMetadata.model_validate(
        {
            k: str(v) if k in ("group", "replicate_id") else v
            for k, v in raw.items()
            if v is not None
        }
    )


def read_mask(
    path: Union[str, Path],
    threshold: int = DEFAULT_THRESHOLD,
    scale: Optional[float] = None,
) -> PoreMask:
    """
    Decode a mask and its sidecar.

    ``scale`` overrides the sidecar; without either the read fails.
    ``replicate_id`` defaults to the file stem.
    """
    path = Path(path)
    with Image.open(path) as img:
        gray = np.asarray(img.convert("L"))
    bits = gray > threshold

    meta_file = sidecar_path(path)
    if meta_file.exists():
        meta = read_mask_metadata(meta_file)
    elif scale is not None:
        meta = MaskMetadata(scale_nm_per_px=scale)
    else:
        raise FileNotFoundError(f"Metadata sidecar not found: {meta_file}")

    logger.debug("read mask %s (%dx%d)", path, bits.shape[1], bits.shape[0])
    return PoreMask(
        bits=bits,
        scale=scale if scale is not None else meta.scale_nm_per_px,
        replicate_id=meta.replicate_id or path.stem,
        group=meta.group,
    )


def write_mask(mask: PoreMask, path: Union[str, Path]) -> Path:
    """Write ``mask`` as 0/255 grayscale; format follows the suffix."""
    path = Path(path)
    Image.fromarray(np.where(mask.bits, 255, 0).astype(np.uint8)).save(path)
    return path
