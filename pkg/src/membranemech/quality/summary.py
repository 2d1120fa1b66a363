"""Box-plot statistics of per-sample CV, grouped by a metadata column."""

from typing import Iterable, Mapping, Union

import numpy as np
import pandas as pd

SUMMARY_COLUMNS = [
    "group",
    "n",
    "median",
    "q1",
    "q3",
    "iqr",
    "whisker_low",
    "whisker_high",
]


def _box(values: pd.Series) -> pd.Series:
    v = np.sort(values.to_numpy(dtype=float))
    q1, median, q3 = np.quantile(v, [0.25, 0.5, 0.75])
    iqr = q3 - q1
    inside = v[(v >= q1 - 1.5 * iqr) & (v <= q3 + 1.5 * iqr)]
    return pd.Series(
        {
            "n": int(v.size),
            "median": float(median),
            "q1": float(q1),
            "q3": float(q3),
            "iqr": float(iqr),
            "whisker_low": float(inside.min()),
            "whisker_high": float(inside.max()),
        }
    )


def summarize_cv(
    records: Union[pd.DataFrame, Iterable[Mapping]],
    by: str = "fabrication_method",
) -> pd.DataFrame:
    """
    Summarize ``cv`` per value of ``by``.

    Rows missing either column are skipped. Groups are sorted by label.

    >>> rows = [{"fabrication_method": "auto_premixed", "cv": c} for c in (0.1, 0.2, 0.3)]
    >>> summarize_cv(rows)["median"].tolist()
    [0.2]
    """
    df = records if isinstance(records, pd.DataFrame) else pd.DataFrame(list(records))
    if df.empty or by not in df.columns or "cv" not in df.columns:
        return pd.DataFrame(columns=SUMMARY_COLUMNS)

    df = df.dropna(subset=[by, "cv"])
    if df.empty:
        return pd.DataFrame(columns=SUMMARY_COLUMNS)
    summary = df.groupby(df[by].astype(str), sort=True)["cv"].apply(_box).unstack()
    summary["n"] = summary["n"].astype(int)
    summary.index.name = "group"
    return summary.reset_index()[SUMMARY_COLUMNS]
