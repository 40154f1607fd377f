"""Enforce the y-mean, y-variance and slope constraints exactly.

With the x-vector fixed, those three targets become

    sum(dy) = 0,   sum(dy**2) = S_yy,   sum(dx * dy) = beta1 * S_xx,

where ``dx``/``dy`` are deviations from the target means.  Holding every
point except three fixed, the first and third equations make two of the
free deviations affine in the remaining one, and the second becomes a
quadratic in it.  Its two roots are the two degenerate datasets.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from typing import NamedTuple, Sequence

import numpy as np

from .constraints import ConstraintSet
from .errors import DegenerateDataError, InfeasibleError
from .shapes import BimodalNoise, Quadratic, ShapeSpec, evaluate_shape, split_bimodal
from .stats import DatasetPair
from .verify import VerificationReport, verify
from .xgen import Branch, XGridSpec, build_x, uniform_x

__all__ = [
    "AdjustmentPlan", "AffineReduction", "Branch", "GroupPlan", "adjust_group",
    "adjust_triple", "affine_reduction", "constraint_residuals", "default_triple",
    "generate", "mid_index", "solve_three_point_minimal",
]


@dataclass(frozen=True)
class AdjustmentPlan:
    """Three distinct 0-based indices to re-solve and the root to keep."""

    indices: tuple[int, int, int]
    branch: Branch = Branch.PLUS

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if len(idx) != 3 or len(set(idx)) != 3:
            raise ValueError(f"need three distinct indices, got {self.indices}")
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "branch", Branch.parse(self.branch))


@dataclass(frozen=True)
class GroupPlan:
    """Re-solve points sharing one x-value (rank-deficient case)."""

    free_indices: tuple[int, ...]
    branch: Branch = Branch.PLUS

    def __post_init__(self):
        idx = tuple(int(i) for i in self.free_indices)
        if len(idx) < 2 or len(set(idx)) != len(idx):
            raise ValueError(f"need at least two distinct free indices, got {self.free_indices}")
        object.__setattr__(self, "free_indices", idx)
        object.__setattr__(self, "branch", Branch.parse(self.branch))


class AffineReduction(NamedTuple):
    """Coefficients of ``dy_lo = a1 + b1 t`` and ``dy_hi = aN + bN t``.

    ``t`` is the deviation at the middle selected point and solves
    ``t = -B ± sqrt(syy_prime + B**2 - C2)``.  ``lo``/``mid``/``hi`` are the
    selected indices ordered by x.
    """

    a1: float
    b1: float
    aN: float
    bN: float
    B: float
    C2: float
    syy_prime: float
    lo: int
    mid: int
    hi: int

    @property
    def discriminant(self) -> float:
        return self.syy_prime + self.B * self.B - self.C2


def mid_index(n: int) -> int:
    """0-based position of the middle element, ``floor((n+1)/2) - 1``."""
    if n < 3:
        raise ValueError("n must be >= 3")
    return (n + 1) // 2 - 1


def default_triple(xs: Sequence[float]) -> tuple[int, int, int]:
    """Indices of the smallest, middle and largest x (by sorted position)."""
    order = np.argsort(np.asarray(xs, dtype=float), kind="stable")
    return int(order[0]), int(order[mid_index(order.size)]), int(order[-1])


def constraint_residuals(d: DatasetPair, constraints: ConstraintSet) -> tuple[float, float, float]:
    """Residuals of the three y-equations, by direct summation."""
    dx = d.xs - constraints.mean_x
    dy = d.ys - constraints.mean_y
    return (
        math.fsum(dy),
        math.fsum(dy * dy) - constraints.syy,
        math.fsum(dx * dy) - constraints.beta1 * constraints.sxx,
    )


def affine_reduction(d: DatasetPair, constraints: ConstraintSet,
                     plan: AdjustmentPlan) -> AffineReduction:
    n = len(d)
    for i in plan.indices:
        if not 0 <= i < n:
            raise IndexError(f"index {i} outside 0..{n - 1}")
    dx = d.xs - constraints.mean_x
    dy = d.ys - constraints.mean_y

    sel = sorted(plan.indices, key=lambda i: (d.xs[i], i))
    lo, mid, hi = sel
    if d.xs[lo] == d.xs[hi]:
        raise DegenerateDataError(
            "degenerate triple: all three selected x-values are equal; use adjust_group")

    fixed = np.ones(n, dtype=bool)
    fixed[list(plan.indices)] = False
    r_sum = -math.fsum(dy[fixed])
    r_cov = constraints.beta1 * constraints.sxx - math.fsum(dx[fixed] * dy[fixed])
    r_sq = constraints.syy - math.fsum(dy[fixed] ** 2)

    x1, xm, xN = dx[lo], dx[mid], dx[hi]
    a1 = (r_cov - xN * r_sum) / (x1 - xN)
    b1 = (xN - xm) / (x1 - xN)
    aN = r_sum - a1
    bN = (x1 - xm) / (xN - x1)
    k = 1.0 + b1 * b1 + bN * bN
    return AffineReduction(
        a1=a1, b1=b1, aN=aN, bN=bN,
        B=(a1 * b1 + aN * bN) / k,
        C2=(a1 * a1 + aN * aN) / k,
        syy_prime=r_sq / k,
        lo=lo, mid=mid, hi=hi,
    )


def adjust_triple(d: DatasetPair, constraints: ConstraintSet, plan: AdjustmentPlan) -> DatasetPair:
    """Replace the three planned y-values so all y-constraints hold.

    Every other coordinate is left untouched.  Raises
    :class:`InfeasibleError` when the quadratic has no real root.
    """
    red = affine_reduction(d, constraints, plan)
    disc = red.discriminant
    # a tangent solution (R² = 1) can round just below zero
    if -1e-12 * (red.syy_prime + red.B**2 + red.C2) < disc < 0:
        disc = 0.0
    if disc < 0:
        raise InfeasibleError(
            f"infeasible: fixed points carry too much variance/covariance (discriminant {disc:.6g})",
            stage="adjust",
        )
    span = d.xs[red.hi] - d.xs[red.lo]
    full = float(d.xs.max() - d.xs.min())
    if span < 0.1 * full:
        warnings.warn(
            f"selected x-values span {span:.3g}, under 10% of the x-range; "
            "expect large y swings", stacklevel=2)

    t = -red.B + plan.branch.sign * math.sqrt(disc)
    ys = d.ys.copy()
    ys[red.lo] = constraints.mean_y + red.a1 + red.b1 * t
    ys[red.mid] = constraints.mean_y + t
    ys[red.hi] = constraints.mean_y + red.aN + red.bN * t
    return d.with_ys(ys)


def solve_three_point_minimal(constraints: ConstraintSet) -> dict[Branch, DatasetPair]:
    """Closed-form ``N = 3`` datasets, keyed by the sign of the middle deviation.

    Only the means, variances and slope of ``constraints`` are used; the
    sample size is taken as 3.  ``MINUS`` is the first column of the classic
    three-point table.
    """
    if constraints.n != 3:
        constraints = replace(constraints, n=3)
    xs = uniform_x(XGridSpec(3, constraints.mean_x, constraints.var_x))
    dx3 = xs[2] - constraints.mean_x
    b1 = constraints.beta1 * constraints.var_x / dx3
    gap = constraints.var_y - b1 * b1
    if gap < 0:
        if gap > -1e-12 * constraints.var_y:
            gap = 0.0
        else:
            raise InfeasibleError(
                "infeasible: variance below regression minimum (R² would exceed 1)",
                stage="adjust")
    out = {}
    for branch in Branch:
        dy2 = branch.sign * 2.0 / math.sqrt(3.0) * math.sqrt(gap)
        dy = np.array([-dy2 / 2 - b1, dy2, -dy2 / 2 + b1])
        out[branch] = DatasetPair(xs, constraints.mean_y + dy)
    return out


def adjust_group(d: DatasetPair, constraints: ConstraintSet,
                 free_indices: Sequence[int], branch: Branch = Branch.PLUS) -> DatasetPair:
    """Fix mean and variance using points that share one x-value.

    Identical x makes the slope equation blind to how y is spread inside the
    group, so the slope has to be carried by the points off the group: a
    single such point is moved to the y it requires; several must already
    satisfy it.  The free points are then shifted and rescaled about their
    own mean, which solves ``sum(dy) = c1`` and ``sum(dy**2) = c2`` in closed
    form.  With exactly two free points this is the usual pair solution.
    """
    plan = GroupPlan(tuple(free_indices), branch)
    n = len(d)
    free = list(plan.free_indices)
    for i in free:
        if not 0 <= i < n:
            raise IndexError(f"index {i} outside 0..{n - 1}")
    xg = d.xs[free[0]]
    if np.any(d.xs[free] != xg):
        raise ValueError("free indices must share one x-value")

    ys = d.ys.copy()
    dx = d.xs - constraints.mean_x
    off = d.xs != xg
    if not off.any():
        raise DegenerateDataError("all x identical; no regression possible")
    # slope equation reduces to sum over off-group points of (dx - dx_g) dy
    lever = dx[off] - (xg - constraints.mean_x)
    need = constraints.beta1 * constraints.sxx
    if off.sum() == 1:
        k = int(np.flatnonzero(off)[0])
        ys[k] = constraints.mean_y + need / lever[0]
    else:
        have = math.fsum(lever * (ys[off] - constraints.mean_y))
        if abs(have - need) > 1e-9 * max(1.0, abs(need)):
            raise InfeasibleError(
                f"outlier covariance requirement inconsistent with fixed y-values "
                f"(have {have:.6g}, need {need:.6g})", stage="adjust")

    dy = ys - constraints.mean_y
    fixed = np.ones(n, dtype=bool)
    fixed[free] = False
    c1 = -math.fsum(dy[fixed])
    c2 = constraints.syy - math.fsum(dy[fixed] ** 2)
    m = len(free)
    spread = c2 - c1 * c1 / m
    if spread < 0:
        raise InfeasibleError(
            f"infeasible pair adjustment (need sum {c1:.6g}, sum of squares {c2:.6g})",
            stage="adjust")

    pattern = ys[free] - math.fsum(ys[free]) / m
    if not np.any(pattern):
        pattern = np.zeros(m)
        pattern[0], pattern[1] = 1.0, -1.0
    scale = plan.branch.sign * math.sqrt(spread / math.fsum(pattern * pattern))
    ys[free] = constraints.mean_y + c1 / m + scale * pattern
    return d.with_ys(ys)


def _auto_plan(shape: ShapeSpec, xs: np.ndarray):
    if isinstance(shape, Quadratic):
        return None
    if isinstance(shape, BimodalNoise):
        group, _ = split_bimodal(xs)
        return GroupPlan(tuple(int(i) for i in np.flatnonzero(xs == group)))
    return AdjustmentPlan(default_triple(xs))


def generate(xspec: XGridSpec | Sequence[float], shape: ShapeSpec, constraints: ConstraintSet,
             plan: AdjustmentPlan | GroupPlan | None | str = "auto",
             tolerance: float = 1e-9) -> tuple[DatasetPair, VerificationReport]:
    """Run the whole pipeline: x grid, shape, adjustment, verification.

    ``plan`` may be an explicit triple or group plan, ``None`` to skip the
    adjustment, or ``"auto"`` (quadratic: none; bimodal noise: the whole
    group; otherwise min/mid/max x).  Raises :class:`InfeasibleError`
    tagged with the failing stage; an unverified dataset is never returned.
    """
    try:
        xs = build_x(xspec)
    except (ValueError, DegenerateDataError) as exc:
        raise InfeasibleError(str(exc), stage="x") from exc
    if xs.size != constraints.n:
        raise InfeasibleError(f"x grid has {xs.size} points, constraints need {constraints.n}", stage="x")

    try:
        ys = evaluate_shape(shape, xs, constraints)
    except InfeasibleError as exc:
        exc.stage = "shape"
        raise
    except (ValueError, IndexError) as exc:
        raise InfeasibleError(str(exc), stage="shape") from exc
    d = DatasetPair(xs, ys)

    if isinstance(plan, str):
        if plan != "auto":
            raise ValueError(f"unknown plan {plan!r}")
        plan = _auto_plan(shape, xs)
    try:
        if isinstance(plan, AdjustmentPlan):
            d = adjust_triple(d, constraints, plan)
        elif isinstance(plan, GroupPlan):
            d = adjust_group(d, constraints, plan.free_indices, plan.branch)
    except InfeasibleError as exc:
        exc.stage = "adjust"
        raise
    except (ValueError, IndexError) as exc:
        raise InfeasibleError(str(exc), stage="adjust") from exc

    report = verify(d, constraints, tolerance)
    if not report.ok:
        failed = ", ".join(k for k, v in report.passed.items() if not v)
        raise InfeasibleError(f"generated dataset failed verification on {failed}", stage="verify")
    return d, report
