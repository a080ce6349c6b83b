"""Deterministic CSV/JSON writers shared by the commands."""

import csv
import io
import math
import sys
from collections.abc import Iterable, Sequence
from enum import Enum
from pathlib import Path

from pydantic import BaseModel


class OutputFormat(str, Enum):
    """Machine-readable output formats."""
    CSV = "csv"
    JSON = "json"


def format_float(value: float) -> str:
    """Fixed 17-significant-digit representation, `nan` for undefined values."""
    if math.isnan(value):
        return "nan"
    return f"{value:.17g}"


def render_csv(header: Sequence[str], rows: Iterable[Sequence[float | int | str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_float(v) if isinstance(v, float) else v for v in row])
    return buffer.getvalue()


def render_json(model: BaseModel) -> str:
    return model.model_dump_json(indent=2, by_alias=True) + "\n"


def emit(text: str, out: Path | None) -> None:
    """Write to `out`, or to stdout when no file is given."""
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8", newline="") as f:
        f.write(text)
