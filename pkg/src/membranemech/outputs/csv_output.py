"""CSV file output sink."""

import csv
from pathlib import Path
from typing import Any, Iterable, Mapping, Union

import pandas as pd

from .base import BaseOutput, TableSchema, format_value


class CSVOutput(BaseOutput):
    """Write records to a CSV file behind a versioned ``#`` header line."""

    output_type = "csv"
    suffix = ".csv"

    def __init__(self, path: Union[str, Path], schema: TableSchema) -> None:
        super().__init__(schema)
        self.path = Path(path)

    def write(self, records: Iterable[Mapping[str, Any]]) -> int:
        columns = self.schema.columns
        self.path.parent.mkdir(parents=True, exist_ok=True)
        count = 0
        with self.path.open("w", newline="", encoding="utf-8") as f:
            f.write(self.schema.header_comment + "\n")
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(columns)
            for record in records:
                writer.writerow([format_value(record.get(c)) for c in columns])
                count += 1
        return count


def read_csv_table(path: Union[str, Path]) -> pd.DataFrame:
    """Read a table written by ``CSVOutput``; the header comment is skipped."""
    return pd.read_csv(path, comment="#", float_precision="round_trip")
