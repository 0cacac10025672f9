"""Utility functions for bosoncast."""

import json
import math
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def format_number(value: float, digits: int = 12) -> str:
    """Format a float with a fixed number of significant digits.

    Output never depends on the locale and negative zero prints as ``0``,
    so CSV files written from identical inputs are byte-identical.

    Args:
        value: Number to format
        digits: Significant digits to keep

    Returns:
        Formatted number
    """
    value = float(value)
    if not math.isfinite(value):
        return repr(value)
    text = f"{value:.{digits}g}"
    if text in ("-0", "-0.0"):
        return "0"
    return text


def ordered_map(fn: Callable[[T], R], items: Iterable[T], threads: int = 1) -> list[R]:
    """Apply ``fn`` to every item, optionally on a thread pool.

    Results always come back in input order, so reductions over them are
    independent of the schedule.

    Args:
        fn: Function to apply
        items: Work units
        threads: Worker count; 1 runs inline

    Returns:
        List of results in input order
    """
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def dump_json(data: dict[str, Any]) -> str:
    """Serialize a report to canonical JSON text (sorted keys, trailing newline)."""
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def save_json(data: dict[str, Any], output_path: Path) -> None:
    """Save a report dictionary to a JSON file.

    Args:
        data: Report dictionary
        output_path: Path to save the results
    """
    output_path.parent.mkdir(parents=True, exist_ok=True)
    with open(output_path, "w", encoding="utf-8", newline="\n") as f:
        f.write(dump_json(data))


def render_csv(
    header: Sequence[str],
    rows: Iterable[Sequence[float]],
    comments: dict[str, Any] | None = None,
) -> str:
    """Render numeric rows as CSV text with ``# key=value`` comment lines.

    Args:
        header: Column names
        rows: Numeric rows
        comments: Metadata echoed as comment lines before the header

    Returns:
        CSV text ending with a newline
    """
    lines = []
    if comments:
        lines.append(
            "# " + " ".join(f"{key}={_comment_value(val)}" for key, val in comments.items())
        )
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(format_number(v) for v in row))
    return "\n".join(lines) + "\n"


def save_text(text: str, output_path: Path) -> None:
    """Write text with Unix newlines, creating parent directories."""
    output_path.parent.mkdir(parents=True, exist_ok=True)
    with open(output_path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def _comment_value(value: Any) -> str:
    if isinstance(value, float):
        return format_number(value)
    if isinstance(value, (list, tuple)):
        return ",".join(_comment_value(v) for v in value)
    return str(value)
