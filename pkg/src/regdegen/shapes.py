"""Shape functions: initial y-vectors patterned around the target line.

A shape only seeds the data.  Apart from the quadratic family, whose three
parameters are solved so the shape itself meets every y-constraint, the
output still has to go through :mod:`regdegen.adjust`.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, replace
from typing import NamedTuple, Sequence, Union

import numpy as np
from scipy.optimize import brentq

from .constraints import ConstraintSet
from .errors import InfeasibleError
from .stats import DatasetPair


class QuadBranch(enum.Enum):
    LEFT = "left"
    RIGHT = "right"

    @classmethod
    def parse(cls, value) -> "QuadBranch":
        if isinstance(value, QuadBranch):
            return value
        return cls(str(value).strip().lower())


@dataclass(frozen=True)
class OnLine:
    pass


@dataclass(frozen=True)
class LinearNoise:
    noise_sd: float
    seed: int = 0

    def __post_init__(self):
        if self.noise_sd < 0:
            raise ValueError("noise_sd must be >= 0")


@dataclass(frozen=True)
class Quadratic:
    branch: QuadBranch = QuadBranch.RIGHT

    def __post_init__(self):
        object.__setattr__(self, "branch", QuadBranch.parse(self.branch))


@dataclass(frozen=True)
class LinearOutlier:
    """Line ``beta0p + beta1p x`` with ``y[outlier_index]`` replaced (0-based)."""

    beta0p: float
    beta1p: float
    outlier_index: int
    outlier_y: float


@dataclass(frozen=True)
class BimodalNoise:
    noise_sd: float
    seed: int = 0

    def __post_init__(self):
        if self.noise_sd < 0:
            raise ValueError("noise_sd must be >= 0")


@dataclass(frozen=True)
class Quartic:
    f0: float
    roots: tuple = (4.150, 7.480, 10.710, 13.850)
    jitter_sd: float = 0.0
    seed: int = 0

    def __post_init__(self):
        roots = tuple(float(r) for r in self.roots)
        if len(roots) != 4:
            raise ValueError(f"quartic needs 4 roots, got {len(roots)}")
        if len(set(roots)) != 4:
            raise ValueError("quartic roots must be distinct")
        if self.jitter_sd < 0:
            raise ValueError("jitter_sd must be >= 0")
        object.__setattr__(self, "roots", roots)


ShapeSpec = Union[OnLine, LinearNoise, Quadratic, LinearOutlier, BimodalNoise, Quartic]


class QuadraticParams(NamedTuple):
    alpha: float
    q0: float
    xstar: float


def eval_line(constraints: ConstraintSet, x):
    return constraints.line(np.asarray(x, dtype=float) if np.ndim(x) else float(x))


def _normal(seed: int, scale: float, size: int) -> np.ndarray:
    return np.random.default_rng(seed).normal(0.0, scale, size)


def shape_on_line(x: Sequence[float], constraints: ConstraintSet) -> np.ndarray:
    return constraints.line(np.asarray(x, dtype=float))


def shape_linear_noise(x, constraints: ConstraintSet, noise_sd: float, seed: int) -> np.ndarray:
    xs = np.asarray(x, dtype=float)
    y = constraints.line(xs)
    if noise_sd > 0:
        y = y + _normal(seed, noise_sd, xs.size)
    return y


# -- quadratic ---------------------------------------------------------------

def _quadratic_terms(xs: np.ndarray, constraints: ConstraintSet, xstar: float):
    """(alpha, q0, sigma*²) for a candidate extremum position."""
    n = xs.size
    dx = xs - constraints.mean_x
    u = (xs - xstar) ** 2
    denom = math.fsum(dx * u)
    if denom == 0.0:
        return math.inf, math.nan, math.inf
    alpha = constraints.sxx * constraints.beta1 / denom
    ubar = math.fsum(u) / n
    q0 = constraints.mean_y - alpha * ubar
    du = u - ubar
    var_star = alpha * alpha * math.fsum(du * du) / (n - 1)
    return alpha, q0, var_star


def delta_variance(x, constraints: ConstraintSet, xstar: float) -> float:
    """Variance of the covariance-matched parabola minus the target variance."""
    xs = np.asarray(x, dtype=float)
    return _quadratic_terms(xs, constraints, xstar)[2] - constraints.var_y


def _pole(xs: np.ndarray, constraints: ConstraintSet) -> float:
    # where sum((x - mean) (x - x*)^2) vanishes and alpha blows up
    dx = xs - constraints.mean_x
    return constraints.mean_x + math.fsum(dx**3) / (2.0 * math.fsum(dx * dx))


def quadratic_roots(x, constraints: ConstraintSet, samples: int = 200) -> list[float]:
    """All x* with zero variance mismatch on the scan window, ascending.

    The window is ``[min(x) - 2R, max(x) + 2R]`` with ``R`` the x-range,
    sampled at ``samples`` points plus two points hugging the pole.
    """
    xs = np.asarray(x, dtype=float)
    if np.unique(xs).size < 3:
        raise ValueError("quadratic shape needs at least 3 distinct x-values")
    lo, hi = float(xs.min()), float(xs.max())
    span = hi - lo
    pole = _pole(xs, constraints)
    grid = np.linspace(lo - 2 * span, hi + 2 * span, samples)
    grid = np.unique(np.concatenate([grid, [pole - 1e-6 * span, pole + 1e-6 * span]]))

    def f(t):
        return delta_variance(xs, constraints, t)

    vals = np.array([f(t) for t in grid])
    roots = []
    for a, b, fa, fb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if not (math.isfinite(fa) and math.isfinite(fb)):
            continue
        if fa == 0.0:
            roots.append(float(a))
        elif fa * fb < 0:
            roots.append(brentq(f, a, b, xtol=1e-14, rtol=4 * np.finfo(float).eps, maxiter=200))
    if vals.size and vals[-1] == 0.0:
        roots.append(float(grid[-1]))
    return sorted(roots)


def solve_quadratic_shape(x, constraints: ConstraintSet,
                          branch: QuadBranch = QuadBranch.RIGHT) -> QuadraticParams:
    """Solve ``q0 + alpha (x - x*)**2`` so it meets mean, variance and slope.

    For each x* the slope fixes ``alpha = beta1 S_xx / sum((x-mean)(x-x*)^2)``
    and the mean fixes ``q0``; x* is then the root of the variance mismatch on
    the requested side of the pole of ``alpha(x*)``.
    """
    branch = QuadBranch.parse(branch)
    xs = np.asarray(x, dtype=float)
    pole = _pole(xs, constraints)

    if constraints.beta1 == 0.0:
        # slope zero forces the pole itself; variance then fixes |alpha|
        u = (xs - pole) ** 2
        du = u - u.mean()
        var_u = math.fsum(du * du) / (xs.size - 1)
        if var_u == 0.0:
            raise InfeasibleError("no quadratic shape exists for these constraints", stage="shape")
        alpha = math.sqrt(constraints.var_y / var_u)
        if branch is QuadBranch.RIGHT:
            alpha = -alpha
        q0 = constraints.mean_y - alpha * math.fsum(u) / xs.size
        return QuadraticParams(alpha, q0, pole)

    roots = quadratic_roots(xs, constraints)
    if branch is QuadBranch.LEFT:
        side = [r for r in roots if r < pole]
    else:
        side = [r for r in roots if r > pole]
    if not side:
        raise InfeasibleError(
            f"no quadratic shape exists for these constraints ({branch.value} branch)", stage="shape")
    xstar = min(side, key=lambda r: abs(r - pole))
    alpha, q0, var_star = _quadratic_terms(xs, constraints, xstar)
    if abs(var_star - constraints.var_y) > 1e-10 * max(1.0, constraints.var_y):
        raise InfeasibleError(
            f"quadratic root did not converge (variance mismatch {var_star - constraints.var_y:.3e})",
            stage="shape")
    return QuadraticParams(alpha, q0, xstar)


def shape_quadratic(x, params: QuadraticParams) -> np.ndarray:
    xs = np.asarray(x, dtype=float)
    return params.q0 + params.alpha * (xs - params.xstar) ** 2


# -- other families ----------------------------------------------------------

def reflect_across_line(d: DatasetPair, constraints: ConstraintSet) -> DatasetPair:
    """Mirror every point vertically through the target line."""
    return d.with_ys(2.0 * constraints.line(d.xs) - d.ys)


def shape_linear_outlier(x, constraints: ConstraintSet, spec: LinearOutlier) -> np.ndarray:
    xs = np.asarray(x, dtype=float)
    if not 0 <= spec.outlier_index < xs.size:
        raise IndexError(f"outlier_index {spec.outlier_index} outside 0..{xs.size - 1}")
    if (spec.beta0p - constraints.beta0) * (spec.beta1p - constraints.beta1) >= 0:
        warnings.warn(
            "shape line should trade intercept against slope: "
            "(beta0' - beta0)(beta1' - beta1) < 0 is recommended",
            stacklevel=2,
        )
    y = spec.beta0p + spec.beta1p * xs
    y[spec.outlier_index] = spec.outlier_y
    return y


def split_bimodal(x) -> tuple[float, float]:
    """Return ``(group_x, lone_x)`` for a two-valued grid."""
    xs = np.asarray(x, dtype=float)
    values, counts = np.unique(xs, return_counts=True)
    if values.size != 2:
        raise ValueError(f"bimodal shape needs exactly two distinct x-values, got {values.size}")
    if counts[0] == counts[1]:
        lone = xs[-1]
        group = values[0] if values[1] == lone else values[1]
        return float(group), float(lone)
    i = int(np.argmin(counts))
    return float(values[1 - i]), float(values[i])


def shape_bimodal_noise(x, constraints: ConstraintSet, noise_sd: float, seed: int) -> np.ndarray:
    xs = np.asarray(x, dtype=float)
    group, lone = split_bimodal(xs)
    y = np.empty_like(xs)
    in_group = xs == group
    y[in_group] = constraints.line(group)
    if noise_sd > 0:
        y[in_group] += _normal(seed, noise_sd, int(in_group.sum()))
    y[~in_group] = constraints.line(lone)
    return y


def shape_quartic(x, constraints: ConstraintSet, spec: Quartic) -> np.ndarray:
    xs = np.asarray(x, dtype=float)
    poly = np.ones_like(xs)
    for h in spec.roots:
        poly *= xs - h
    y = constraints.line(xs) + spec.f0 * poly
    if spec.jitter_sd > 0:
        y = y + _normal(spec.seed, spec.jitter_sd, xs.size)
    return y


def evaluate_shape(shape: ShapeSpec, x, constraints: ConstraintSet) -> np.ndarray:
    """Initial y-vector for ``shape`` on grid ``x``."""
    if isinstance(shape, OnLine):
        return shape_on_line(x, constraints)
    if isinstance(shape, LinearNoise):
        return shape_linear_noise(x, constraints, shape.noise_sd, shape.seed)
    if isinstance(shape, Quadratic):
        return shape_quadratic(x, solve_quadratic_shape(x, constraints, shape.branch))
    if isinstance(shape, LinearOutlier):
        return shape_linear_outlier(x, constraints, shape)
    if isinstance(shape, BimodalNoise):
        return shape_bimodal_noise(x, constraints, shape.noise_sd, shape.seed)
    if isinstance(shape, Quartic):
        return shape_quartic(x, constraints, shape)
    raise TypeError(f"unknown shape {shape!r}")


def is_seeded(shape: ShapeSpec) -> bool:
    """True when the shape draws random numbers (and so can be reseeded)."""
    if isinstance(shape, (LinearNoise, BimodalNoise)):
        return shape.noise_sd > 0
    if isinstance(shape, Quartic):
        return shape.jitter_sd > 0
    return False


def reseed(shape: ShapeSpec, seed: int) -> ShapeSpec:
    return replace(shape, seed=seed) if hasattr(shape, "seed") else shape
