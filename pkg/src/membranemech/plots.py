"""
SVG reports.

Figures are built on ``matplotlib.figure.Figure`` without pyplot, so no
global figure state is shared between calls. ``svg.hashsalt`` and an empty
``Date`` make the output byte-identical for identical input.
"""

import logging
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import matplotlib
import numpy as np
import pandas as pd
from matplotlib.figure import Figure
from pydantic import BaseModel, Field

from .models.base import StressStrainCurve
from .psd.models import AggregatedPSD
from .segment.models import SegmentationResult
from .trends import RESPONSE_COLUMNS, TrendFit

logger = logging.getLogger("membranemech.plots")

_SVG_RC = {"svg.hashsalt": "membranemech", "svg.fonttype": "path"}
_MAX_LINE_POINTS = 1000

RESPONSE_LABELS = {
    "elastic_modulus": "Elastic modulus (bar)",
    "pore_fraction": "Pore fraction",
}


class PlotStyle(BaseModel):
    """Colours and sizes of report figures."""

    group_colors: Dict[str, str] = Field(
        default_factory=lambda: {
            "rh_ge_49": "tab:blue",
            "rh_lt_49": "tab:orange",
            "nitrogen": "tab:green",
        }
    )
    region_colors: Dict[str, str] = Field(
        default_factory=lambda: {
            "elastic": "tab:blue",
            "plateau": "tab:orange",
            "densification": "tab:green",
            "creep": "tab:red",
        }
    )
    band_alpha: float = Field(0.2, ge=0, le=1)
    panel_size: Tuple[float, float] = (5.0, 3.5)
    curve_color: str = "black"


def _save(fig: Figure, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with matplotlib.rc_context(_SVG_RC):
        fig.savefig(path, format="svg", metadata={"Date": None})
    return path


def plot_overview(
    properties: pd.DataFrame,
    trends: Sequence[TrendFit],
    path: Union[str, Path],
    style: Optional[PlotStyle] = None,
) -> Path:
    """Modulus and pore fraction against wt%, per humidity group, with trend lines."""
    style = style or PlotStyle()
    width, height = style.panel_size
    fig = Figure(figsize=(2 * width, height))
    axes = fig.subplots(1, 2)

    for ax, response in zip(axes, RESPONSE_COLUMNS):
        column = RESPONSE_COLUMNS[response]
        for group, frame in properties.groupby("humidity_group", sort=True):
            color = style.group_colors.get(str(group), "gray")
            ax.scatter(frame["wt_pct"], frame[column], s=14, color=color, label=str(group))
            for fit in trends:
                if fit.group == str(group) and fit.response == response:
                    xs = np.array([frame["wt_pct"].min(), frame["wt_pct"].max()], dtype=float)
                    ax.plot(xs, fit.slope * xs + fit.intercept, color=color, linewidth=1)
        ax.set_xlabel("Polymer concentration (wt%)")
        ax.set_ylabel(RESPONSE_LABELS[response])
        ax.grid(True, alpha=0.3)
    if not properties.empty:
        axes[0].legend(fontsize="small")
    fig.tight_layout()
    return _save(fig, Path(path))


def plot_sample(
    sample_id: str,
    curves: Sequence[Tuple[StressStrainCurve, SegmentationResult]],
    path: Union[str, Path],
    style: Optional[PlotStyle] = None,
) -> Path:
    """
    One panel per test position: the curve over shaded region bands.

    Each band is an SVG group with id ``region-<label>-p<position>``.
    """
    style = style or PlotStyle()
    width, height = style.panel_size
    n = max(1, len(curves))
    fig = Figure(figsize=(width, height * n))
    axes = np.atleast_1d(fig.subplots(n, 1, squeeze=False)[:, 0])

    for ax, (curve, seg) in zip(axes, curves):
        strain, stress, _ = curve.arrays()
        stride = max(1, strain.size // _MAX_LINE_POINTS)
        for region in seg.regions:
            lo, hi = region.strain_range
            ax.axvspan(
                lo,
                hi,
                color=style.region_colors.get(region.label.value, "gray"),
                alpha=style.band_alpha,
                linewidth=0,
                gid=f"region-{region.label.value}-p{curve.position_index}",
            )
        ax.plot(strain[::stride], stress[::stride], color=style.curve_color, linewidth=0.8)
        status = "" if seg.ok else " (segmentation failed)"
        ax.set_title(f"{sample_id} position {curve.position_index}{status}", fontsize="small")
        ax.set_xlabel("Strain")
        ax.set_ylabel("Stress (bar)")
    fig.tight_layout()
    return _save(fig, Path(path))


def plot_psd(
    aggregates: Sequence[AggregatedPSD],
    path: Union[str, Path],
    style: Optional[PlotStyle] = None,
) -> Path:
    """Mean area-weighted PSD with a +/- SE band, one line per group."""
    style = style or PlotStyle()
    fig = Figure(figsize=style.panel_size)
    ax = fig.subplots()
    for agg in aggregates:
        edges = np.asarray(agg.bin_edges)
        centers = (edges[:-1] + edges[1:]) / 2.0
        mean, se = np.asarray(agg.mean), np.asarray(agg.se)
        label = f"{agg.group or 'all'} ({'corrected' if agg.corrected else 'coated'})"
        (line,) = ax.plot(centers, mean, linewidth=1, label=label)
        ax.fill_between(centers, mean - se, mean + se, color=line.get_color(), alpha=0.2)
    ax.set_xlabel("Equivalent diameter (nm)")
    ax.set_ylabel("Area fraction per bin")
    if aggregates:
        ax.legend(fontsize="small")
    fig.tight_layout()
    return _save(fig, Path(path))


def plot_report(
    properties: pd.DataFrame,
    trends: Sequence[TrendFit],
    samples: Mapping[str, Sequence[Tuple[StressStrainCurve, SegmentationResult]]],
    out_dir: Union[str, Path],
    style: Optional[PlotStyle] = None,
) -> List[Path]:
    """
    ``overview.svg`` plus ``<sample_id>.svg`` per sample, in sample order.

    Raises:
        ValueError: Nothing to plot.
    """
    if properties.empty and not samples:
        raise ValueError("no results to plot")
    out_dir = Path(out_dir)
    paths = [plot_overview(properties, trends, out_dir / "overview.svg", style)]
    for sample_id in sorted(samples):
        target = out_dir / f"{sample_id}.svg"
        paths.append(plot_sample(sample_id, samples[sample_id], target, style))
    logger.info("wrote %d plots to %s", len(paths), out_dir)
    return paths
