"""Anscombe's quartet, stored exactly as originally published."""
from __future__ import annotations

from .constraints import ANSCOMBE
from .stats import DatasetPair

_X = ("10.0", "8.0", "13.0", "9.0", "11.0", "14.0", "6.0", "4.0", "12.0", "7.0", "5.0")

# (x, y) columns as printed, original (unsorted) order
QUARTET_TEXT = {
    "I": (_X, ("8.04", "6.95", "7.58", "8.81", "8.33", "9.96", "7.24", "4.26", "10.84", "4.82", "5.68")),
    "II": (_X, ("9.14", "8.14", "8.74", "8.77", "9.26", "8.10", "6.13", "3.10", "9.13", "7.26", "4.74")),
    "III": (_X, ("7.46", "6.77", "12.74", "7.11", "7.81", "8.84", "6.08", "5.39", "8.15", "6.42", "5.73")),
    "IV": (
        ("8.0", "8.0", "8.0", "8.0", "8.0", "8.0", "8.0", "19.0", "8.0", "8.0", "8.0"),
        ("6.58", "5.76", "7.71", "8.84", "8.47", "7.04", "5.25", "12.50", "5.56", "7.91", "6.89"),
    ),
}

NAMES = tuple(QUARTET_TEXT)
TARGETS = ANSCOMBE


def load(name: str) -> DatasetPair:
    xs, ys = QUARTET_TEXT[name]
    return DatasetPair([float(v) for v in xs], [float(v) for v in ys])


def load_all() -> dict[str, DatasetPair]:
    return {name: load(name) for name in NAMES}


def csv_text(name: str) -> str:
    xs, ys = QUARTET_TEXT[name]
    return "x,y\n" + "".join(f"{x},{y}\n" for x, y in zip(xs, ys))
