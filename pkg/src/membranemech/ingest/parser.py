"""
Force-displacement parser for compression tester exports.

The instrument writes delimiter-separated text (comma or tab) with a
header row. Columns are matched by name, not position, and may carry
units in the header (see ``normalizers.units``).
"""

import io
import logging
import math
from pathlib import Path
from typing import Dict, List, TextIO, Tuple, Union

import pandas as pd

from ..errors import CellParseError, SchemaError
from ..models.base import RawCurve
from ..normalizers.units import CANONICAL_COLUMNS, normalize_header

logger = logging.getLogger("membranemech.ingest")


class ForceDisplacementParser:
    """
    Parse a compression-test export into a ``RawCurve``.

    Column headers are resolved through ``normalize_header``, so
    ``time_s`` and ``Time (ms)`` land on the same canonical column in
    any column order. Unrelated columns are ignored.

    Example::

        parser = ForceDisplacementParser()
        with open("M17_p0.csv", encoding="utf-8") as fh:
            raw = parser.parse(fh, sample_id="M17", position_index=0)
    """

    REQUIRED_COLUMNS: Tuple[str, ...] = CANONICAL_COLUMNS

    # -- reading ---------------------------------------------------------------

    @staticmethod
    def sniff_delimiter(header_line: str) -> str:
        """Tab if the header contains one, else comma."""
        return "\t" if "\t" in header_line else ","

    def read_table(self, stream: TextIO) -> pd.DataFrame:
        """Read the whole stream into a string-typed DataFrame."""
        text = stream.read()
        header_line = text.split("\n", 1)[0]
        sep = self.sniff_delimiter(header_line)
        return pd.read_csv(
            io.StringIO(text),
            sep=sep,
            dtype=str,
            keep_default_na=False,
            skipinitialspace=True,
        )

    def _map_columns(self, columns: List[str]) -> Dict[str, Tuple[str, float]]:
        """Map canonical column -> (source column, unit factor)."""
        mapping: Dict[str, Tuple[str, float]] = {}
        for col in columns:
            resolved = normalize_header(col)
            if resolved and resolved[0] not in mapping:
                mapping[resolved[0]] = (col, resolved[1])

        for required in self.REQUIRED_COLUMNS:
            if required not in mapping:
                raise SchemaError(f"missing required column {required!r}", column=required)
        return mapping

    @staticmethod
    def _to_float(cell: str, row: int, column: str) -> float:
        try:
            value = float(cell)
        except (TypeError, ValueError):
            raise CellParseError(
                f"row {row}: non-numeric value {cell!r} in column {column!r}",
                row=row,
                column=column,
            ) from None
        if not math.isfinite(value):
            raise CellParseError(
                f"row {row}: non-finite value {cell!r} in column {column!r}",
                row=row,
                column=column,
            )
        return value

    # -- parsing ---------------------------------------------------------------

    def parse(
        self,
        stream: TextIO,
        *,
        sample_id: str,
        position_index: int = 0,
        validate: bool = True,
    ) -> RawCurve:
        """
        Parse every row of ``stream``.

        Args:
            stream: Character stream positioned at the header row.
            sample_id: Identifier stored on the curve.
            position_index: Test location on the membrane.
            validate: Run ``RawCurve.validate_curve`` before returning.

        Raises:
            SchemaError: A required column is missing.
            CellParseError: A cell is non-numeric (row index reported, 0-based).
            TooFewSamplesError: Fewer than 16 rows (when ``validate``).
        """
        df = self.read_table(stream)
        mapping = self._map_columns([str(c) for c in df.columns])

        columns: Dict[str, List[float]] = {c: [] for c in self.REQUIRED_COLUMNS}
        for canonical, (source, factor) in mapping.items():
            values = columns[canonical]
            for row, cell in enumerate(df[source].tolist()):
                value = self._to_float(cell, row, source)
                values.append(value * factor if factor != 1.0 else value)

        raw = RawCurve(
            sample_id=sample_id,
            position_index=position_index,
            time=columns["time_s"],
            force=columns["force_N"],
            displacement=columns["displacement_um"],
        )

        logger.info("parsed %d rows for %s/%d", len(df), sample_id, position_index)
        if validate:
            raw.validate_curve()
        return raw


def parse_force_displacement(
    stream: TextIO,
    sample_id: str,
    *,
    position_index: int = 0,
    validate: bool = True,
) -> RawCurve:
    """Parse a delimited force-displacement stream into a ``RawCurve``."""
    return ForceDisplacementParser().parse(
        stream, sample_id=sample_id, position_index=position_index, validate=validate
    )


def read_force_displacement(
    path: Union[str, Path],
    sample_id: str,
    *,
    position_index: int = 0,
) -> RawCurve:
    """Parse a force-displacement file from disk."""
    with Path(path).open("r", encoding="utf-8", newline="") as fh:
        return parse_force_displacement(fh, sample_id, position_index=position_index)


def write_force_displacement(raw: RawCurve, stream: TextIO, *, delimiter: str = ",") -> None:
    """
    Serialize a ``RawCurve`` in the canonical schema.

    Values are written with ``repr`` so parsing the output reproduces
    every float exactly.
    """
    stream.write(delimiter.join(CANONICAL_COLUMNS) + "\n")
    for t, f, d in zip(raw.time, raw.force, raw.displacement):
        stream.write(f"{float(t)!r}{delimiter}{float(f)!r}{delimiter}{float(d)!r}\n")
