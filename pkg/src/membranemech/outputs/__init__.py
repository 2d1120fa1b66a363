"""Output sinks for analysis tables."""

from pathlib import Path
from typing import Union

from . import schemas
from .base import BaseOutput, OutputRegistry, TableSchema, format_value, ordered
from .csv_output import CSVOutput, read_csv_table
from .jsonl_output import JSONLinesOutput, read_jsonl_table
from .stdout_output import StdoutOutput


def open_table_sink(fmt: str, directory: Union[str, Path], schema: TableSchema) -> BaseOutput:
    """
    File sink for ``schema`` named ``<schema.name><suffix>`` in ``directory``.

    Raises:
        ValueError: ``fmt`` is not a registered file sink.
    """
    output_cls = OutputRegistry.get(fmt)
    if output_cls is None or not output_cls.suffix:
        raise ValueError(f"Unknown output format: {fmt}")
    return output_cls(path=Path(directory) / f"{schema.name}{output_cls.suffix}", schema=schema)


def read_table(path: Union[str, Path]):
    """Read a CSV or JSON-lines table back into a DataFrame."""
    path = Path(path)
    if path.suffix == JSONLinesOutput.suffix:
        return read_jsonl_table(path)
    return read_csv_table(path)


__all__ = [
    "BaseOutput",
    "CSVOutput",
    "JSONLinesOutput",
    "OutputRegistry",
    "StdoutOutput",
    "TableSchema",
    "format_value",
    "open_table_sink",
    "ordered",
    "read_csv_table",
    "read_jsonl_table",
    "read_table",
    "schemas",
]
