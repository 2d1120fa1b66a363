"""
Line-oriented text record for ``SegmentationResult``.

Schema (tab-separated, one field per line, floats written with ``repr``)::

    # membranemech segmentation v1
    sample_id       M17
    position_index  2
    status          ok
    failure_reason
    has_creep       false
    breakpoints     0.15    0.6
    flags           low_r2
    region  elastic 0.0  0.15  166.1  0.0  0.999  120

``region`` lines carry label, strain start, strain end, slope, intercept,
r_squared and point_count, in strain order.
"""

from pathlib import Path
from typing import IO, Dict, List, Union

from ..errors import SchemaError
from .models import RegionFit, RegionLabel, SegmentationResult, SegmentFlag, SegmentStatus

RECORD_HEADER = "# membranemech segmentation v1"

_REQUIRED = ("sample_id", "position_index", "status", "has_creep", "breakpoints")


def format_segmentation_record(seg: SegmentationResult) -> str:
    lines = [
        RECORD_HEADER,
        f"sample_id\t{seg.sample_id}",
        f"position_index\t{seg.position_index}",
        f"status\t{seg.status.value}",
        f"failure_reason\t{seg.failure_reason or ''}",
        f"has_creep\t{'true' if seg.has_creep else 'false'}",
        "\t".join(["breakpoints", *(repr(b) for b in seg.breakpoints)]),
        "\t".join(["flags", *(f.value for f in seg.flags)]),
    ]
    for r in seg.regions:
        lines.append(
            "\t".join(
                [
                    "region",
                    r.label.value,
                    repr(r.strain_range[0]),
                    repr(r.strain_range[1]),
                    repr(r.slope),
                    repr(r.intercept),
                    repr(r.r_squared),
                    str(r.point_count),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def write_segmentation_record(seg: SegmentationResult, target: Union[str, Path, IO[str]]) -> None:
    """Write ``seg`` to a path or an open text stream."""
    text = format_segmentation_record(seg)
    if isinstance(target, (str, Path)):
        Path(target).write_text(text, encoding="utf-8")
    else:
        target.write(text)


def parse_segmentation_record(text: str) -> SegmentationResult:
    """
    Parse the text produced by ``format_segmentation_record``.

    Raises:
        SchemaError: Missing header, unknown key or missing field.
    """
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != RECORD_HEADER:
        raise SchemaError("not a segmentation record (missing header)")

    fields: Dict[str, List[str]] = {}
    regions: List[RegionFit] = []
    for line in lines[1:]:
        key, *values = line.split("\t")
        if key == "region":
            if len(values) != 7:
                raise SchemaError(f"malformed region line: {line!r}", column="region")
            label, lo, hi, slope, intercept, r2, count = values
            regions.append(
                RegionFit(
                    label=RegionLabel(label),
                    strain_range=(float(lo), float(hi)),
                    slope=float(slope),
                    intercept=float(intercept),
                    r_squared=float(r2),
                    point_count=int(count),
                )
            )
        elif key in (*_REQUIRED, "failure_reason", "flags"):
            fields[key] = [v for v in values if v != ""]
        else:
            raise SchemaError(f"unknown record key {key!r}", column=key)

    for key in _REQUIRED:
        if key not in fields:
            raise SchemaError(f"segmentation record missing {key!r}", column=key)

    def single(key: str) -> str:
        values = fields[key]
        if len(values) != 1:
            raise SchemaError(f"{key!r} needs exactly one value", column=key)
        return values[0]

    reason = fields.get("failure_reason") or []
    return SegmentationResult(
        sample_id=single("sample_id"),
        position_index=int(single("position_index")),
        status=SegmentStatus(single("status")),
        failure_reason="\t".join(reason) or None,
        has_creep=single("has_creep") == "true",
        breakpoints=[float(b) for b in fields["breakpoints"]],
        regions=regions,
        flags=tuple(SegmentFlag(f) for f in fields.get("flags", [])),
    )


def read_segmentation_record(source: Union[str, Path, IO[str]]) -> SegmentationResult:
    """Read a record from a path or an open text stream."""
    if isinstance(source, (str, Path)):
        text = Path(source).read_text(encoding="utf-8")
    else:
        text = source.read()
    return parse_segmentation_record(text)
