"""Rasterized disk masks with analytic porosity."""

import logging
from typing import List, Sequence, Tuple

import numpy as np

from ..errors import SpecError
from ..psd.models import PoreMask
from .models import DiskSpec

logger = logging.getLogger("membranemech.synth")

_MAX_PLACEMENT_TRIES = 1000


def _place(
    disks: Sequence[DiskSpec], image_nm: Tuple[float, float], seed: int
) -> List[Tuple[float, float, float]]:
    """Resolve centers, drawing free ones at random; returns (x, y, r)."""
    rng = np.random.default_rng(seed)
    width, height = image_nm
    placed: List[Tuple[float, float, float]] = []

    def fits(x: float, y: float, r: float) -> bool:
        if x - r < 0 or y - r < 0 or x + r > width or y + r > height:
            return False
        return all(np.hypot(x - px, y - py) >= r + pr for px, py, pr in placed)

    for disk in disks:
        r = disk.diameter / 2.0
        if disk.center is not None:
            x, y = disk.center
            if not fits(x, y, r):
                raise SpecError(
                    f"disk at {disk.center} (d={disk.diameter}) overlaps or leaves image"
                )
        else:
            for _ in range(_MAX_PLACEMENT_TRIES):
                x, y = rng.uniform(r, width - r), rng.uniform(r, height - r)
                if fits(x, y, r):
                    break
            else:
                raise SpecError(f"no room for disk of diameter {disk.diameter} nm")
        placed.append((float(x), float(y), r))
    return placed


def generate_disk_mask(
    disks: Sequence[DiskSpec],
    image_nm: Tuple[float, float],
    scale: float,
    seed: int = 0,
    replicate_id: str = "",
    group: str = "",
) -> PoreMask:
    """
    Rasterize non-overlapping disks; a pixel is pore when its centre lies
    inside a disk.

    Disks without a centre are placed at random (seeded). Touching disks
    may merge into one pore after labelling.

    Raises:
        SpecError: A disk overlaps another or extends past the image.
    """
    if not scale > 0:
        raise SpecError(f"scale must be positive, got {scale}")
    width_px = int(round(image_nm[0] / scale))
    height_px = int(round(image_nm[1] / scale))
    ys = (np.arange(height_px) + 0.5) * scale
    xs = (np.arange(width_px) + 0.5) * scale
    gx, gy = np.meshgrid(xs, ys)

    bits = np.zeros((height_px, width_px), dtype=bool)
    for x, y, r in _place(disks, image_nm, seed):
        bits |= (gx - x) ** 2 + (gy - y) ** 2 <= r * r

    logger.debug("disk mask %dx%d px with %d disks", width_px, height_px, len(disks))
    return PoreMask(bits=bits, scale=scale, replicate_id=replicate_id, group=group)


def analytic_porosity(disks: Sequence[DiskSpec], image_nm: Tuple[float, float]) -> float:
    """Exact pore area fraction (%) of the disks."""
    area = sum(np.pi * (d.diameter / 2.0) ** 2 for d in disks)
    return float(area / (image_nm[0] * image_nm[1]) * 100.0)
