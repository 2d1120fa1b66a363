"""
Humidity grouping and concentration trends.

Samples fall in exactly one humidity group: nitrogen-treated samples are
``nitrogen`` whatever their RH; the rest split at the RH threshold.
"""

import logging
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field
from scipy.stats import linregress

from .errors import ManifestError

logger = logging.getLogger("membranemech.trends")

RESPONSES = ("elastic_modulus", "pore_fraction")

#: properties.csv column holding each response
RESPONSE_COLUMNS = {"elastic_modulus": "modulus_bar", "pore_fraction": "pore_fraction"}


class HumidityGroup(str, Enum):
    RH_GE_49 = "rh_ge_49"
    RH_LT_49 = "rh_lt_49"
    NITROGEN = "nitrogen"


def assign_group(
    humidity_pct: Optional[float], nitrogen: bool, threshold: float = 49.0
) -> HumidityGroup:
    """
    Humidity group of one sample.

    Raises:
        ManifestError: Neither humidity nor nitrogen treatment is known.
    """
    if nitrogen:
        return HumidityGroup.NITROGEN
    if humidity_pct is None:
        raise ManifestError("sample has no humidity_pct and is not nitrogen-treated")
    return HumidityGroup.RH_GE_49 if humidity_pct >= threshold else HumidityGroup.RH_LT_49


class TrendFit(BaseModel):
    """Least-squares line of a response against polymer concentration."""

    model_config = ConfigDict(frozen=True)

    group: str
    response: str
    slope: float = Field(..., description="Response units per wt%")
    intercept: float
    n: int = Field(..., ge=2)
    r_squared: float = Field(..., ge=0, le=1)

    @property
    def slope_sign(self) -> int:
        return int(np.sign(self.slope))

    def predict(self, concentration: float) -> float:
        return self.slope * concentration + self.intercept


def fit_trend(
    points: Sequence[Tuple[float, float]],
    group: str,
    response: str = "elastic_modulus",
) -> TrendFit:
    """
    Ordinary least squares of response on concentration.

    Raises:
        ValueError: Fewer than 2 points or all concentrations equal.
    """
    if len(points) < 2:
        raise ValueError(f"{group}/{response}: need at least 2 points, got {len(points)}")
    x = np.array([p[0] for p in points], dtype=float)
    y = np.array([p[1] for p in points], dtype=float)
    if np.ptp(x) == 0:
        raise ValueError(f"{group}/{response}: concentrations have zero variance")
    fit = linregress(x, y)
    r2 = float(fit.rvalue**2) if np.isfinite(fit.rvalue) else 0.0
    return TrendFit(
        group=group,
        response=response,
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        n=int(x.size),
        r_squared=min(1.0, r2),
    )


def fit_trends(
    properties: pd.DataFrame,
    responses: Iterable[str] = RESPONSES,
) -> List[TrendFit]:
    """
    One fit per (humidity group, response) over a properties table.

    Groups with too few points or a single concentration are skipped with
    a warning.
    """
    fits: List[TrendFit] = []
    if properties.empty:
        return fits
    for group, frame in properties.groupby("humidity_group", sort=True):
        for response in responses:
            column = RESPONSE_COLUMNS[response]
            data = frame[["wt_pct", column]].dropna()
            try:
                fits.append(
                    fit_trend(list(data.itertuples(index=False, name=None)), str(group), response)
                )
            except ValueError as exc:
                logger.warning("trend skipped: %s", exc)
    return fits
