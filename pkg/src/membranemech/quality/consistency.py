"""
Intra-sample consistency on a common stress axis.

Each curve is inverted to strain(stress). Unload wiggles are removed by
taking the running maximum of stress first, so the inverse is a function.
"""

import logging
from typing import Optional, Sequence, Tuple

import numpy as np

from ..errors import EmptyOverlapError, NonPhysicalError
from ..models.base import StressStrainCurve
from .models import ConsistencyReport, StressGrid

logger = logging.getLogger("membranemech.quality")

DEFAULT_GRID_POINTS = 200


def monotone_inverse(curve: StressStrainCurve) -> Tuple[np.ndarray, np.ndarray]:
    """Strictly increasing stress and the strain first reaching each value."""
    strain, stress, _ = curve.arrays()
    envelope = np.maximum.accumulate(stress)
    levels, first = np.unique(envelope, return_index=True)
    return levels, strain[first]


def _check_count(curves: Sequence[StressStrainCurve]) -> None:
    if len(curves) < 2:
        raise ValueError(f"need at least 2 curves, got {len(curves)}")


def common_stress_axis(
    curves: Sequence[StressStrainCurve],
    n_points: int = DEFAULT_GRID_POINTS,
) -> np.ndarray:
    """
    Uniform stress grid over the range every curve covers.

    The grid has ``n_points`` values over (lo, hi], where lo is the largest
    per-curve minimum and hi the smallest per-curve maximum. The lower end
    is excluded to stay off the 0/0 point at the origin.

    Raises:
        EmptyOverlapError: The stress ranges do not overlap.
    """
    _check_count(curves)
    inverses = [monotone_inverse(c) for c in curves]
    lo = max(float(levels[0]) for levels, _ in inverses)
    hi = min(float(levels[-1]) for levels, _ in inverses)
    if not hi > lo:
        raise EmptyOverlapError(
            f"{curves[0].sample_id}: stress ranges do not overlap ({lo:.4g} >= {hi:.4g} bar)"
        )
    return np.linspace(lo, hi, n_points + 1)[1:]


def intra_sample_cv(
    curves: Sequence[StressStrainCurve],
    n_points: Optional[int] = None,
    ddof: int = 1,
) -> ConsistencyReport:
    """
    Coefficient of variation of strain across repeated tests.

    ``ddof=1`` (the default) uses the sample standard deviation at each
    stress level; ``ddof=0`` the population one.

    Raises:
        EmptyOverlapError: No common stress range.
        NonPhysicalError: Grand mean strain is not positive.
    """
    if ddof not in (0, 1):
        raise ValueError(f"ddof must be 0 or 1, got {ddof}")
    grid = common_stress_axis(curves, n_points or DEFAULT_GRID_POINTS)
    strains = np.vstack(
        [np.interp(grid, levels, strain) for levels, strain in map(monotone_inverse, curves)]
    )
    grand_mean = float(strains.mean())
    if grand_mean <= 0:
        raise NonPhysicalError(f"{curves[0].sample_id}: grand mean strain {grand_mean!r} <= 0")
    cv = float(strains.std(axis=0, ddof=ddof).mean() / grand_mean)

    logger.info("%s: cv %.4f over %d curves", curves[0].sample_id, cv, len(curves))
    return ConsistencyReport(
        sample_id=curves[0].sample_id,
        n_curves=len(curves),
        cv=cv,
        stress_grid=StressGrid.from_values(grid),
        mean_strain=grand_mean,
        per_curve_flags={
            c.position_index: tuple(f.value for f in c.flags) for c in curves
        },
    )
