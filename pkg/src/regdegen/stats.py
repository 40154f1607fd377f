"""Descriptive statistics and simple linear regression.

Every accumulation goes through :func:`math.fsum`, so results do not depend
on the order of the pairs.  Variances and covariances use the ``N - 1``
divisor; z-score moments average with ``1 / N``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DegenerateDataError


@dataclass(frozen=True)
class DatasetPair:
    """Paired ``x``/``y`` samples of equal length (at least three)."""

    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        xs = np.array(self.xs, dtype=float)
        ys = np.array(self.ys, dtype=float)
        if xs.ndim != 1 or ys.ndim != 1:
            raise ValueError("xs and ys must be one-dimensional")
        if xs.size != ys.size:
            raise ValueError(f"length mismatch: {xs.size} x-values, {ys.size} y-values")
        if xs.size < 3:
            raise ValueError(f"need at least 3 pairs, got {xs.size}")
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
            raise ValueError("non-finite value in dataset")
        xs.flags.writeable = False
        ys.flags.writeable = False
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    def __len__(self) -> int:
        return int(self.xs.size)

    def with_ys(self, ys) -> "DatasetPair":
        return DatasetPair(self.xs, ys)


class RegressionFit(NamedTuple):
    beta0: float
    beta1: float
    r_squared: float


class MomentReport(NamedTuple):
    """Third and fourth z-score moments of both columns."""

    skew_x: float
    kurt_x: float
    skew_y: float
    kurt_y: float


def _as_floats(v: Sequence[float]) -> np.ndarray:
    return np.asarray(v, dtype=float).ravel()


def mean(v: Sequence[float]) -> float:
    a = _as_floats(v)
    if a.size == 0:
        raise DegenerateDataError("empty vector")
    return math.fsum(a) / a.size


def sum_sq_dev(v: Sequence[float]) -> float:
    """S_vv: sum of squared deviations from the mean."""
    a = _as_floats(v)
    d = a - mean(a)
    return math.fsum(d * d)


def sum_prod_dev(x: Sequence[float], y: Sequence[float]) -> float:
    """S_xy: sum of products of deviations from the means."""
    a, b = _as_floats(x), _as_floats(y)
    if a.size != b.size:
        raise ValueError(f"length mismatch: {a.size} vs {b.size}")
    return math.fsum((a - mean(a)) * (b - mean(b)))


def variance(v: Sequence[float]) -> float:
    a = _as_floats(v)
    if a.size < 2:
        raise DegenerateDataError("degenerate sample")
    return sum_sq_dev(a) / (a.size - 1)


def covariance(x: Sequence[float], y: Sequence[float]) -> float:
    a, b = _as_floats(x), _as_floats(y)
    if a.size != b.size:
        raise ValueError(f"length mismatch: {a.size} vs {b.size}")
    if a.size < 2:
        raise DegenerateDataError("degenerate sample")
    return sum_prod_dev(a, b) / (a.size - 1)


def linregress(d: DatasetPair) -> RegressionFit:
    """Least-squares line through ``d`` with its coefficient of determination.

    ``r_squared`` is ``beta1**2 * S_xx / S_yy``; for constant ``y`` (all points
    on a flat line) it is defined as 1.
    """
    sxx = sum_sq_dev(d.xs)
    if sxx == 0.0:
        raise DegenerateDataError("vertical data, slope undefined")
    syy = sum_sq_dev(d.ys)
    beta1 = sum_prod_dev(d.xs, d.ys) / sxx
    beta0 = mean(d.ys) - beta1 * mean(d.xs)
    r_squared = 1.0 if syy == 0.0 else beta1 * beta1 * sxx / syy
    return RegressionFit(beta0, beta1, r_squared)


def zscore_moment(v: Sequence[float], order: int) -> float:
    """Mean of ``z**order`` with ``z`` standardised by the sample (N-1) std."""
    if order not in (3, 4):
        raise ValueError(f"order must be 3 or 4, got {order}")
    a = _as_floats(v)
    var = variance(a)
    if var == 0.0:
        raise DegenerateDataError("zero variance, z-scores undefined")
    z = (a - mean(a)) / math.sqrt(var)
    return math.fsum(z**order) / a.size
