"""Tests for output sinks."""

import json
import math

import pytest

from membranemech.models.base import FabricationMethod
from membranemech.outputs import (
    CSVOutput,
    JSONLinesOutput,
    OutputRegistry,
    StdoutOutput,
    TableSchema,
    format_value,
    open_table_sink,
    read_table,
    schemas,
)

SCHEMA = TableSchema(name="demo", columns=["sample_id", "value", "flags"])

RECORDS = [
    {"sample_id": "M15", "value": 0.1 + 0.2, "flags": ["LOW_R2", "NO_PLATEAU"], "extra": 1},
    {"sample_id": "M17", "value": None, "flags": []},
]


class TestOutputRegistry:
    def test_outputs_registered(self):
        registry = OutputRegistry.list_outputs()
        assert "csv" in registry
        assert "json-lines" in registry
        assert "stdout" in registry

    def test_get_by_type(self):
        assert OutputRegistry.get("json-lines") is JSONLinesOutput
        assert OutputRegistry.get("nonexistent") is None


class TestFormatValue:
    @pytest.mark.parametrize(
        ("value", "expected"),
        [
            (None, ""),
            (math.nan, ""),
            (0.30000000000000004, "0.30000000000000004"),
            (True, "true"),
            (3, "3"),
            (["A", "B"], "A;B"),
            (FabricationMethod.MANUAL_PREMIXED, FabricationMethod.MANUAL_PREMIXED.value),
        ],
    )
    def test_cells(self, value, expected):
        assert format_value(value) == expected


class TestCSVOutput:
    def test_write(self, tmp_path):
        out_file = tmp_path / "out.csv"
        count = CSVOutput(path=out_file, schema=SCHEMA).write(iter(RECORDS))
        assert count == 2

        lines = out_file.read_text().splitlines()
        assert lines[0] == "# membranemech demo v1"
        assert lines[1] == "sample_id,value,flags"
        assert lines[2] == "M15,0.30000000000000004,LOW_R2;NO_PLATEAU"
        assert lines[3] == "M17,,"

    def test_read_back(self, tmp_path):
        out_file = tmp_path / "out.csv"
        CSVOutput(path=out_file, schema=SCHEMA).write(iter(RECORDS))
        df = read_table(out_file)
        assert list(df.columns) == SCHEMA.columns
        assert df["value"][0] == 0.1 + 0.2
        assert math.isnan(df["value"][1])

    def test_write_empty(self, tmp_path):
        out_file = tmp_path / "empty.csv"
        assert CSVOutput(path=out_file, schema=SCHEMA).write(iter([])) == 0
        assert out_file.read_text() == "# membranemech demo v1\nsample_id,value,flags\n"


class TestJSONLinesOutput:
    def test_write(self, tmp_path):
        out_file = tmp_path / "out.jsonl"
        count = JSONLinesOutput(path=out_file, schema=SCHEMA).write(iter(RECORDS))
        assert count == 2

        lines = out_file.read_text().splitlines()
        assert json.loads(lines[0]) == {"schema": "demo", "version": 1}
        first = json.loads(lines[1])
        assert list(first) == SCHEMA.columns
        assert first["flags"] == ["LOW_R2", "NO_PLATEAU"]
        assert json.loads(lines[2])["value"] is None

    def test_read_back(self, tmp_path):
        out_file = tmp_path / "out.jsonl"
        JSONLinesOutput(path=out_file, schema=SCHEMA).write(iter(RECORDS))
        df = read_table(out_file)
        assert list(df["sample_id"]) == ["M15", "M17"]


class TestStdoutOutput:
    def test_write(self, capsys):
        count = StdoutOutput(schema=SCHEMA).write(iter(RECORDS))
        assert count == 2
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "sample_id\tvalue\tflags"
        assert lines[1].split("\t") == ["M15", "0.30000000000000004", "LOW_R2;NO_PLATEAU"]

    def test_no_header(self, capsys):
        StdoutOutput(schema=SCHEMA, header=False).write(iter(RECORDS[1:]))
        assert capsys.readouterr().out == "M17\t\t\n"


class TestOpenTableSink:
    @pytest.mark.parametrize(("fmt", "cls", "name"), [
        ("csv", CSVOutput, "properties.csv"),
        ("json-lines", JSONLinesOutput, "properties.jsonl"),
    ])
    def test_file_sinks(self, tmp_path, fmt, cls, name):
        sink = open_table_sink(fmt, tmp_path, schemas.PROPERTIES)
        assert isinstance(sink, cls)
        assert sink.path == tmp_path / name

    @pytest.mark.parametrize("fmt", ["stdout", "parquet"])
    def test_rejects_non_file_formats(self, tmp_path, fmt):
        with pytest.raises(ValueError, match="Unknown output format"):
            open_table_sink(fmt, tmp_path, schemas.PROPERTIES)
