"""
Utility functions for graph-inertia: number formatting, JSON output and golden data.
"""

import json
from dataclasses import dataclass
from importlib import resources
from typing import Any

from .constants import (
    FLOAT_SIGNIFICANT_DIGITS,
    TABLE1_GOLDEN,
    TABLE2_GOLDEN,
    UNVERIFIED_MARKER,
)

SECONDS_PER_MINUTE = 60


def format_float(value: float, digits: int = FLOAT_SIGNIFICANT_DIGITS) -> str:
    """Fixed significant-digit rendering; negative zero prints as 0."""
    text = f"{value:.{digits}g}"
    return "0" if text in ("-0", "0") else text


def format_elapsed(seconds: float) -> str:
    """Format a duration for display."""
    if seconds < 1:
        return f"{seconds * 1000:.0f} ms"
    if seconds < SECONDS_PER_MINUTE:
        return f"{seconds:.1f} s"
    minutes, rest = divmod(seconds, SECONDS_PER_MINUTE)
    return f"{int(minutes)} min {rest:.0f} s"


def dump_json(data: Any) -> str:
    """Compact JSON with a stable key order as given."""
    return json.dumps(data, separators=(",", ":"))


def _read_data(name: str) -> str:
    return resources.files("graph_inertia").joinpath("data", name).read_text(encoding="utf-8")


@dataclass(frozen=True)
class GoldenName:
    """A transcribed B_k name; unverified ones were marked by hand as suspect."""

    name: str
    verified: bool = True


def load_table1_golden() -> list[GoldenName]:
    """Table of reduced X-complete graphs, one B_k name per line; '#' starts a comment."""
    names = []
    for line in _read_data(TABLE1_GOLDEN).splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.endswith(UNVERIFIED_MARKER):
            names.append(GoldenName(line[: -len(UNVERIFIED_MARKER)].strip(), verified=False))
        else:
            names.append(GoldenName(line))
    return names


def load_table2_golden() -> dict[int, dict[str, Any]]:
    """Per-order census goldens keyed by integer order."""
    data = json.loads(_read_data(TABLE2_GOLDEN))
    return {int(order): entry for order, entry in data["orders"].items()}
