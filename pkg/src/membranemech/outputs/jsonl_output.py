"""JSON-lines file output sink."""

import json
import math
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Mapping, Union

import pandas as pd

from .base import BaseOutput, TableSchema, ordered


def _plain(value: Any) -> Any:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (list, tuple, set, frozenset)):
        return [_plain(v) for v in value]
    if isinstance(value, float) and math.isnan(value):
        return None
    if hasattr(value, "item"):
        return _plain(value.item())
    return value


class JSONLinesOutput(BaseOutput):
    """
    One JSON object per line, keys in schema order.

    The first line is a ``{"schema": ..., "version": ...}`` object.
    """

    output_type = "json-lines"
    suffix = ".jsonl"

    def __init__(self, path: Union[str, Path], schema: TableSchema) -> None:
        super().__init__(schema)
        self.path = Path(path)

    def write(self, records: Iterable[Mapping[str, Any]]) -> int:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        count = 0
        with self.path.open("w", encoding="utf-8", newline="\n") as f:
            header = {"schema": self.schema.name, "version": self.schema.version}
            f.write(json.dumps(header) + "\n")
            for record in records:
                row = {k: _plain(v) for k, v in ordered(record, self.schema.columns).items()}
                f.write(json.dumps(row) + "\n")
                count += 1
        return count


def read_jsonl_table(path: Union[str, Path]) -> pd.DataFrame:
    """Read a table written by ``JSONLinesOutput``."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    rows = [json.loads(line) for line in lines[1:] if line.strip()]
    return pd.DataFrame(rows)
