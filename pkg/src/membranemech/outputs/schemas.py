"""Column layouts of every table the runner and CLI emit."""

from ..formulate.dilution import WORKLIST_COLUMNS
from ..quality.summary import SUMMARY_COLUMNS
from .base import TableSchema

PROPERTIES = TableSchema(
    name="properties",
    columns=[
        "sample_id",
        "position",
        "wt_pct",
        "humidity_group",
        "modulus_bar",
        "yield_bar",
        "pore_fraction",
        "creep_strain",
        "flags",
        "compressibility",
    ],
)

CV = TableSchema(
    name="cv",
    columns=[
        "sample_id",
        "n_curves",
        "cv",
        "pass_fail",
        "reasons",
        "wt_pct",
        "humidity_group",
        "fabrication_method",
    ],
)

CV_SUMMARY = TableSchema(name="cv_summary", columns=["by", *SUMMARY_COLUMNS])

TRENDS = TableSchema(
    name="trends",
    columns=["group", "response", "slope", "intercept", "n", "r_squared", "slope_sign"],
)

ERRORS = TableSchema(
    name="errors",
    columns=["sample_id", "file", "stage", "error_type", "message"],
)

WORKLIST = TableSchema(name="worklist", columns=list(WORKLIST_COLUMNS))

PSD = TableSchema(
    name="psd",
    columns=[
        "group",
        "corrected",
        "row_type",
        "bin_left_nm",
        "bin_right_nm",
        "mean_area_fraction",
        "se_area_fraction",
        "n_replicates",
    ],
)
