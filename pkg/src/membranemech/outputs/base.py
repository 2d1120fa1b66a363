"""
Base output sink and registry.

All output sinks auto-register via ``__init_subclass__``. Sinks receive
flat records (mappings) together with a ``TableSchema`` that fixes the
column order and the versioned header line.
"""

import math
from abc import ABC, abstractmethod
from enum import Enum
from typing import Any, Dict, Iterable, List, Mapping, Optional, Type

from pydantic import BaseModel, ConfigDict


class TableSchema(BaseModel):
    """Name, version and column order of one output table."""

    model_config = ConfigDict(frozen=True)

    name: str
    version: int = 1
    columns: List[str]

    @property
    def header_comment(self) -> str:
        return f"# membranemech {self.name} v{self.version}"


def format_value(value: Any) -> str:
    """
    Text form of a cell.

    Floats use ``repr`` so values round-trip exactly; None and NaN become
    empty cells; sequences are joined with ``;``.
    """
    if value is None:
        return ""
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "" if math.isnan(value) else repr(value)
    if isinstance(value, (list, tuple, set, frozenset)):
        return ";".join(format_value(v) for v in value)
    if hasattr(value, "item"):
        return format_value(value.item())
    return str(value)


def ordered(record: Mapping[str, Any], columns: List[str]) -> Dict[str, Any]:
    """``record`` restricted to ``columns``, in that order."""
    return {c: record.get(c) for c in columns}


class OutputRegistry:
    """Registry of available output sinks."""

    _registry: Dict[str, Type["BaseOutput"]] = {}

    @classmethod
    def register(cls, name: str, output_cls: Type["BaseOutput"]) -> None:
        cls._registry[name] = output_cls

    @classmethod
    def get(cls, name: str) -> Optional[Type["BaseOutput"]]:
        return cls._registry.get(name)

    @classmethod
    def list_outputs(cls) -> Dict[str, Type["BaseOutput"]]:
        return dict(cls._registry)


class BaseOutput(ABC):
    """
    Base class for output sinks.

    Subclasses must define ``output_type`` and implement ``write()``.
    File sinks also set ``suffix``.
    """

    output_type: str = ""
    suffix: str = ""

    def __init_subclass__(cls, **kwargs: Any) -> None:
        super().__init_subclass__(**kwargs)
        if cls.output_type:
            OutputRegistry.register(cls.output_type, cls)

    def __init__(self, schema: TableSchema) -> None:
        self.schema = schema

    @abstractmethod
    def write(self, records: Iterable[Mapping[str, Any]]) -> int:
        """
        Write records in schema column order.

        Args:
            records: Flat mappings; keys outside the schema are ignored.

        Returns:
            Number of records written.
        """
        ...
