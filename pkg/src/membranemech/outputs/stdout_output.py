"""Stdout output sink."""

import sys
from typing import Any, Iterable, Mapping

from .base import BaseOutput, TableSchema, format_value


class StdoutOutput(BaseOutput):
    """Print records to stdout as tab-separated rows under a header."""

    output_type = "stdout"

    def __init__(self, schema: TableSchema, header: bool = True) -> None:
        super().__init__(schema)
        self.header = header

    def write(self, records: Iterable[Mapping[str, Any]]) -> int:
        columns = self.schema.columns
        if self.header:
            sys.stdout.write("\t".join(columns) + "\n")
        count = 0
        for record in records:
            sys.stdout.write("\t".join(format_value(record.get(c)) for c in columns) + "\n")
            count += 1
        return count
