"""
Lever-rule dilution planning.

Targets are mass fractions, so masses come from the lever rule and
volumes from per-stock densities. Blending solutions of very different
viscosity mixes poorly; plans whose viscosity ratio exceeds
``warning_ratio`` carry a warning.
"""

import itertools
import logging
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import pandas as pd

from ..config.loader import FormulateConfig
from ..errors import InfeasibleTargetError
from .models import DilutionPlan, PlanComponent, Stock, ViscosityModel

logger = logging.getLogger("membranemech.formulate")

WORKLIST_COLUMNS = [
    "target_wt_pct",
    "component",
    "concentration_wt_pct",
    "mass_g",
    "volume_mL",
    "warning",
]


def make_stock(label: str, concentration: float, cfg: Optional[FormulateConfig] = None) -> Stock:
    """Build a ``Stock`` with its density looked up in config."""
    cfg = cfg or FormulateConfig()
    return Stock(
        label=label,
        concentration=concentration,
        density=cfg.densities.get(label, cfg.default_density),
    )


def viscosity(stock: Stock, cfg: Optional[FormulateConfig] = None) -> float:
    """Viscosity in Pa*s from the stock's own model or the configured one."""
    cfg = cfg or FormulateConfig()
    model = stock.viscosity_model or ViscosityModel(
        alpha=cfg.viscosity_alpha, beta=cfg.viscosity_beta
    )
    return model.viscosity(stock.concentration)


def viscosity_ratio(stocks: Iterable[Stock], cfg: Optional[FormulateConfig] = None) -> float:
    values = [viscosity(s, cfg) for s in stocks]
    return max(values) / min(values) if values else 1.0


def plan_dilution(
    a: Stock,
    b: Stock,
    target: float,
    total_mass: float,
    cfg: Optional[FormulateConfig] = None,
) -> DilutionPlan:
    """
    Blend ``a`` and ``b`` to ``target`` wt% with ``total_mass`` grams.

    Raises:
        InfeasibleTargetError: Target outside the stocks' range, or equal
            stocks that differ from the target.
        ValueError: Non-positive total mass.
    """
    cfg = cfg or FormulateConfig()
    if total_mass <= 0:
        raise ValueError(f"total mass must be positive, got {total_mass}")

    ca, cb = a.concentration, b.concentration
    if ca == cb:
        if target != ca:
            raise InfeasibleTargetError(
                f"target {target} wt% unreachable from two {ca} wt% stocks", target=target
            )
        masses = [(a, total_mass)]
    else:
        if not min(ca, cb) <= target <= max(ca, cb):
            raise InfeasibleTargetError(
                f"target {target} wt% outside [{min(ca, cb)}, {max(ca, cb)}] wt%", target=target
            )
        masses = [
            (a, total_mass * (target - cb) / (ca - cb)),
            (b, total_mass * (ca - target) / (ca - cb)),
        ]

    components = [
        PlanComponent(
            label=stock.label,
            concentration=stock.concentration,
            mass_g=mass,
            volume_ml=mass / stock.density,
        )
        for stock, mass in masses
        if mass > 0
    ]
    used = [stock for stock, mass in masses if mass > 0]
    ratio = viscosity_ratio(used, cfg)

    warning = None
    if ratio > cfg.warning_ratio:
        warning = (
            f"viscosity ratio {ratio:.0f}x exceeds {cfg.warning_ratio:g}x; "
            "blending may be incomplete"
        )
        logger.warning("target %s wt%%: %s", target, warning)

    return DilutionPlan(
        components=components,
        target_concentration=target,
        total_mass=total_mass,
        viscosity_ratio=ratio,
        warning=warning,
    )


def plan_series(
    stock: Stock,
    diluent: Stock,
    targets: Sequence[float],
    per_target_mass: float,
    cfg: Optional[FormulateConfig] = None,
) -> List[DilutionPlan]:
    """
    One plan per target, in the order given.

    Raises:
        InfeasibleTargetError: The first infeasible target, by value.
    """
    plans = [plan_dilution(stock, diluent, t, per_target_mass, cfg) for t in targets]
    if plans:
        usage = stock_consumption(plans)
        logger.info(
            "series of %d plans uses %s",
            len(plans),
            ", ".join(f"{label} {mass:.4f} g" for label, mass in usage.items()),
        )
    return plans


def stock_consumption(plans: Iterable[DilutionPlan]) -> Dict[str, float]:
    """Total mass drawn from each stock across ``plans``."""
    usage: Dict[str, float] = {}
    for plan in plans:
        for c in plan.components:
            usage[c.label] = usage.get(c.label, 0.0) + c.mass_g
    return usage


def recommend_diluent(
    stocks: Sequence[Stock],
    target: float,
    cfg: Optional[FormulateConfig] = None,
) -> Tuple[Stock, Stock]:
    """
    Pick the pair of stocks that reaches ``target`` with the lowest
    viscosity ratio.

    A stock already at ``target`` is returned paired with itself. Ties go
    to the earlier pair in ``stocks`` order.

    Raises:
        InfeasibleTargetError: No stock or pair brackets the target.
    """
    best: Optional[Tuple[Stock, Stock]] = None
    best_ratio = float("inf")
    for s in stocks:
        if s.concentration == target:
            return s, s
    for a, b in itertools.combinations(stocks, 2):
        lo, hi = sorted((a.concentration, b.concentration))
        if lo == hi or not lo <= target <= hi:
            continue
        ratio = viscosity_ratio((a, b), cfg)
        if ratio < best_ratio:
            best, best_ratio = (a, b), ratio
    if best is None:
        raise InfeasibleTargetError(f"no stock pair brackets {target} wt%", target=target)
    logger.debug(
        "target %s wt%%: %s + %s (ratio %.3g)", target, best[0].label, best[1].label, best_ratio
    )
    return best


def plans_to_worklist(plans: Iterable[DilutionPlan]) -> pd.DataFrame:
    """Flatten plans into one worklist row per component."""
    rows = [
        {
            "target_wt_pct": plan.target_concentration,
            "component": c.label,
            "concentration_wt_pct": c.concentration,
            "mass_g": c.mass_g,
            "volume_mL": c.volume_ml,
            "warning": plan.warning or "",
        }
        for plan in plans
        for c in plan.components
    ]
    return pd.DataFrame(rows, columns=WORKLIST_COLUMNS)
