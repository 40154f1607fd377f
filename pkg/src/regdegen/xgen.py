"""Build x-vectors with a prescribed mean and sample variance."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateDataError
from .stats import variance


class Branch(enum.Enum):
    """Sign choice for a two-valued solution."""

    PLUS = "+"
    MINUS = "-"

    @property
    def sign(self) -> float:
        return 1.0 if self is Branch.PLUS else -1.0

    @classmethod
    def parse(cls, value) -> "Branch":
        if isinstance(value, Branch):
            return value
        v = str(value).strip().lower()
        if v in ("+", "plus", "p", "1", "+1"):
            return cls.PLUS
        if v in ("-", "minus", "m", "-1"):
            return cls.MINUS
        raise ValueError(f"unknown branch {value!r}")


@dataclass(frozen=True)
class XGridSpec:
    """Recipe for an x-vector.

    ``family`` is ``"uniform"`` (evenly spaced) or ``"bimodal"`` (``n - 1``
    copies of one value and a single outlier).  ``branch`` only matters for
    the bimodal family: PLUS puts the outlier above the mean.
    """

    n: int
    mean: float
    variance: float
    family: str = "uniform"
    branch: Branch = Branch.PLUS

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"n must be >= 3, got {self.n}")
        if not self.variance > 0:
            raise ValueError(f"variance must be positive, got {self.variance}")
        if self.family not in ("uniform", "bimodal"):
            raise ValueError(f"unknown x family {self.family!r}")
        object.__setattr__(self, "branch", Branch.parse(self.branch))


def uniform_x(spec: XGridSpec) -> np.ndarray:
    """Arithmetic sequence ``x0 + a*k`` for ``k = 1..n``.

    The step ``a = sqrt(12 var / (n (n+1)))`` and ``x0 = mean - a (n+1)/2``
    give the requested mean and sample variance for odd and even ``n``.
    """
    n = spec.n
    if n < 2:
        raise ValueError("uniform grid needs n >= 2")
    a = math.sqrt(12.0 * spec.variance / (n * (n + 1)))
    x0 = spec.mean - a * (n + 1) / 2.0
    return x0 + a * np.arange(1, n + 1, dtype=float)


def bimodal_x(spec: XGridSpec) -> np.ndarray:
    """``n - 1`` copies of ``x_a`` followed by one ``x_b``.

    Deviations satisfy ``(n-1) dx_a + dx_b = 0`` and
    ``S_xx = n dx_b**2 / (n-1)``, so ``dx_b = ±(n-1) sqrt(var / n)``.
    """
    n = spec.n
    dxb = spec.branch.sign * (n - 1) * math.sqrt(spec.variance / n)
    dxa = -dxb / (n - 1)
    xs = np.full(n, spec.mean + dxa)
    xs[-1] = spec.mean + dxb
    return xs


def custom_x(values: Sequence[float]) -> np.ndarray:
    xs = np.sort(np.asarray(values, dtype=float).ravel())
    if xs.size < 3:
        raise ValueError(f"need at least 3 x-values, got {xs.size}")
    if not np.all(np.isfinite(xs)):
        raise ValueError("non-finite x-value")
    if variance(xs) == 0.0:
        raise DegenerateDataError("all x identical; no regression possible")
    return xs


def build_x(spec: XGridSpec | Sequence[float]) -> np.ndarray:
    if isinstance(spec, XGridSpec):
        return uniform_x(spec) if spec.family == "uniform" else bimodal_x(spec)
    return custom_x(spec)
