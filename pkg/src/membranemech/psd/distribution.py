"""
Area-weighted pore-size distributions.

Each pore is replaced by the circle of equal area; its diameter picks the
bin and its area is the weight. Coating correction grows the pore set by
the coating thickness on a Euclidean distance transform, then relabels.
"""

import logging
from typing import Optional, Sequence

import numpy as np
from scipy import ndimage

from ..errors import BinMismatchError, InsufficientReplicatesError
from .labeling import label_pores
from .models import AggregatedPSD, PoreMask, PoreSizeDistribution

logger = logging.getLogger("membranemech.psd")

DEFAULT_BIN_NM = 0.5
_DISTANCE_EPS = 1e-9
_BIN_DIGITS = 12


def equivalent_diameter(area: float) -> float:
    """
    Diameter of the circle with ``area``.

    >>> round(equivalent_diameter(78.54), 3)
    10.0
    """
    if not area > 0:
        raise ValueError(f"area must be positive, got {area}")
    return float(2.0 * np.sqrt(area / np.pi))


def corrected_diameter(diameter: float, coating_nm: float) -> float:
    """Uncoated diameter of a pore imaged through a coating of ``coating_nm``."""
    return diameter + 2.0 * coating_nm


def dilate_mask(mask: PoreMask, t: float) -> PoreMask:
    """
    Grow pores by ``t`` nm.

    A pixel joins the pore set when its Euclidean distance to the nearest
    pore pixel is at most ``t / scale``, so sub-pixel thicknesses work.
    """
    if t < 0:
        raise ValueError(f"dilation must be non-negative, got {t}")
    if t == 0 or not mask.bits.any():
        return mask.with_bits(mask.bits.copy(), corrected=True)
    distance = ndimage.distance_transform_edt(~mask.bits)
    grown = distance <= t / mask.scale + _DISTANCE_EPS
    logger.debug(
        "dilated %s by %.3g nm: %d -> %d pore pixels",
        mask.replicate_id or "mask",
        t,
        mask.pore_pixels,
        int(grown.sum()),
    )
    return mask.with_bits(grown, corrected=True)


def bin_index(diameters: np.ndarray, bin_nm: float) -> np.ndarray:
    """
    Left-closed bin of each diameter.

    Quotients are rounded to ``_BIN_DIGITS`` first, so a diameter on an
    edge such as ``0.3`` with ``bin_nm=0.1`` lands in bin 3, not 2.
    """
    quotient = np.round(np.asarray(diameters, dtype=float) / bin_nm, _BIN_DIGITS)
    return np.floor(quotient).astype(int)


def default_max_diameter(mask: PoreMask) -> float:
    """Equivalent diameter of the whole image, the largest possible pore."""
    return equivalent_diameter(mask.image_area_nm2)


def area_weighted_psd(
    mask: PoreMask,
    bin_nm: float = DEFAULT_BIN_NM,
    max_diameter: Optional[float] = None,
    exclude_border: bool = False,
) -> PoreSizeDistribution:
    """
    Histogram circular-equivalent pore areas into ``bin_nm`` bins.

    Bins are ``[k*bin_nm, (k+1)*bin_nm)`` from 0 up to ``max_diameter``
    (default: the image's own equivalent diameter), so replicates of equal
    size share edges. With ``exclude_border`` pores touching the edge are
    left out of both the histogram and the porosity.
    """
    if not bin_nm > 0:
        raise ValueError(f"bin width must be positive, got {bin_nm}")
    pores = label_pores(mask)
    border = sum(p.touches_border for p in pores)
    if exclude_border:
        pores = [p for p in pores if not p.touches_border]

    pixel_area = mask.scale**2
    areas = np.array([p.pixel_area * pixel_area for p in pores], dtype=float)
    diameters = np.array([equivalent_diameter(a) for a in areas], dtype=float)

    top = max_diameter if max_diameter is not None else default_max_diameter(mask)
    n_bins = int(np.ceil(top / bin_nm))
    index = bin_index(diameters, bin_nm)
    if index.size:
        n_bins = max(n_bins, int(index.max()) + 1)
    circular = np.pi * (diameters / 2.0) ** 2
    fraction = np.bincount(index, weights=circular, minlength=n_bins) / mask.image_area_nm2

    pore_pixels = sum(p.pixel_area for p in pores)
    porosity = float(pore_pixels / (mask.width * mask.height) * 100.0)
    logger.debug(
        "%s: %d pores (%d on border), porosity %.2f%%",
        mask.replicate_id or "mask",
        len(pores),
        border,
        porosity,
    )
    return PoreSizeDistribution(
        bin_edges=(np.arange(n_bins + 1) * bin_nm).tolist(),
        area_fraction=fraction.tolist(),
        surface_porosity=porosity,
        corrected=mask.corrected,
        replicate_id=mask.replicate_id,
        group=mask.group,
        n_pores=len(pores),
        border_pores=border,
    )


def aggregate_replicates(psds: Sequence[PoreSizeDistribution]) -> AggregatedPSD:
    """
    Mean and standard error (sample std / sqrt(n)) per bin and for porosity.

    Raises:
        InsufficientReplicatesError: Fewer than two replicates.
        BinMismatchError: Replicates binned on different edges.
    """
    n = len(psds)
    if n < 2:
        raise InsufficientReplicatesError(f"need at least 2 replicates, got {n}")
    edges = psds[0].bin_edges
    for p in psds[1:]:
        if p.bin_edges != edges:
            raise BinMismatchError(
                f"replicate {p.replicate_id or '?'} has different bin edges "
                f"({len(p.bin_edges)} vs {len(edges)})"
            )

    table = np.vstack([p.area_fraction for p in psds])
    porosity = np.array([p.surface_porosity for p in psds])
    root_n = np.sqrt(n)
    return AggregatedPSD(
        bin_edges=list(edges),
        mean=table.mean(axis=0).tolist(),
        se=(table.std(axis=0, ddof=1) / root_n).tolist(),
        porosity_mean=float(porosity.mean()),
        porosity_se=float(porosity.std(ddof=1) / root_n),
        n_replicates=n,
        corrected=psds[0].corrected,
        group=psds[0].group,
    )
