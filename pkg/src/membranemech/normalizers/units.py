"""
Unit normalization for instrument column headers.

Compression testers export the same quantities under different names
and units:
- canonical: time_s, force_N, displacement_um
- verbose:   "Time (s)", "Force (kN)", "Displacement (mm)"
- suffixed:  "time_ms", "load_N", "extension_mm"

Every header resolves to a canonical column plus a scale factor that
converts its values to s / N / µm.
"""

import re
from typing import Dict, Optional, Tuple

#: Canonical column names used throughout membranemech.
CANONICAL_COLUMNS: Tuple[str, ...] = ("time_s", "force_N", "displacement_um")

QUANTITY_ALIASES: Dict[str, str] = {
    "time": "time",
    "t": "time",
    "elapsed": "time",
    "force": "force",
    "load": "force",
    "displacement": "displacement",
    "disp": "displacement",
    "extension": "displacement",
    "position": "displacement",
    "deformation": "displacement",
}

UNIT_FACTORS: Dict[str, Dict[str, float]] = {
    "time": {
        "s": 1.0,
        "sec": 1.0,
        "ms": 1e-3,
        "min": 60.0,
    },
    "force": {
        "n": 1.0,
        "kn": 1e3,
        "mn": 1e-3,
        "lbf": 4.4482216152605,
    },
    "displacement": {
        "um": 1.0,
        "µm": 1.0,
        "micron": 1.0,
        "mm": 1e3,
        "nm": 1e-3,
        "m": 1e6,
    },
}

_CANONICAL_FOR: Dict[str, str] = {
    "time": "time_s",
    "force": "force_N",
    "displacement": "displacement_um",
}

_HEADER_PATTERN = re.compile(
    r"^\s*(?P<name>[A-Za-zµ ]+?)\s*"
    r"(?:[\(\[](?P<paren>[^\)\]]+)[\)\]]|_(?P<suffix>[A-Za-zµ]+))?\s*$"
)


def normalize_header(header: str) -> Optional[Tuple[str, float]]:
    """
    Resolve an instrument column header to a canonical column and factor.

    Args:
        header: Raw header text from the file.

    Returns:
        ``(canonical_column, factor)`` or None if the header is unrelated.

    Examples:
        >>> normalize_header("force_N")
        ('force_N', 1.0)
        >>> normalize_header("Displacement (mm)")
        ('displacement_um', 1000.0)
        >>> normalize_header("Comment") is None
        True
    """
    if header is None:
        return None
    match = _HEADER_PATTERN.match(str(header))
    if not match:
        return None

    name = match.group("name").strip().lower()
    unit = (match.group("paren") or match.group("suffix") or "").strip().lower()

    quantity = QUANTITY_ALIASES.get(name)
    if quantity is None:
        return None

    factors = UNIT_FACTORS[quantity]
    if not unit:
        # Bare "Force"/"Time" headers are assumed to be in canonical units
        return _CANONICAL_FOR[quantity], 1.0
    factor = factors.get(unit)
    if factor is None:
        return None
    return _CANONICAL_FOR[quantity], factor
