"""CSV dataset files: header ``x,y``, one pair per line."""
from __future__ import annotations

import math
import os
from pathlib import Path

from .stats import DatasetPair


class DatasetFormatError(ValueError):
    pass


def format_value(v: float) -> str:
    return f"{v:.12g}"


def dumps(d: DatasetPair) -> str:
    lines = ["x,y"]
    lines += [f"{format_value(x)},{format_value(y)}" for x, y in zip(d.xs, d.ys)]
    return "\n".join(lines) + "\n"


def loads(text: str, source: str = "<string>") -> DatasetPair:
    xs, ys = [], []
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split(",")]
        if not header_seen:
            header_seen = True
            if [f.lower() for f in fields] == ["x", "y"]:
                continue
        if len(fields) != 2:
            raise DatasetFormatError(f"{source}:{lineno}: expected 2 fields, got {len(fields)}")
        try:
            x, y = float(fields[0]), float(fields[1])
        except ValueError:
            raise DatasetFormatError(f"{source}:{lineno}: not a number: {line!r}") from None
        if not (math.isfinite(x) and math.isfinite(y)):
            raise DatasetFormatError(f"{source}:{lineno}: non-finite value")
        xs.append(x)
        ys.append(y)
    if len(xs) < 3:
        raise DatasetFormatError(f"{source}: need at least 3 data rows, got {len(xs)}")
    return DatasetPair(xs, ys)


def read_dataset(path: str | os.PathLike) -> DatasetPair:
    p = Path(path)
    return loads(p.read_text(), source=str(p))


def write_dataset(path: str | os.PathLike, d: DatasetPair) -> None:
    Path(path).write_text(dumps(d))
