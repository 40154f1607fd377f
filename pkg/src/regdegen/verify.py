"""Check a dataset against a constraint set using only :mod:`regdegen.stats`."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .constraints import ConstraintSet
from .errors import DegenerateDataError
from .stats import DatasetPair, MomentReport, linregress, mean, variance, zscore_moment

CONSTRAINT_KEYS = ("n", "mean_x", "var_x", "mean_y", "var_y", "beta1")


def moment_report(d: DatasetPair) -> MomentReport:
    return MomentReport(
        skew_x=zscore_moment(d.xs, 3),
        kurt_x=zscore_moment(d.xs, 4),
        skew_y=zscore_moment(d.ys, 3),
        kurt_y=zscore_moment(d.ys, 4),
    )


@dataclass
class VerificationReport:
    measured: dict
    targets: dict
    residuals: dict
    passed: dict
    tolerance: float
    moments: MomentReport | None = None
    ok: bool = field(init=False)

    def __post_init__(self):
        self.ok = all(self.passed.values())

    def failures(self) -> list[str]:
        return [k for k in CONSTRAINT_KEYS if not self.passed[k]]

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "tolerance": self.tolerance,
            "measured": self.measured,
            "targets": self.targets,
            "residuals": self.residuals,
            "passed": self.passed,
            "moments": None if self.moments is None else self.moments._asdict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        rows = [f"{'constraint':<10} {'target':>14} {'measured':>16} {'residual':>11}  status"]
        for k in CONSTRAINT_KEYS:
            rows.append(
                f"{k:<10} {self.targets[k]:>14.10g} {self.measured[k]:>16.12g} "
                f"{self.residuals[k]:>11.3e}  {'ok' if self.passed[k] else 'FAIL'}")
        rows.append(f"{'beta0':<10} {self.targets['beta0']:>14.10g} {self.measured['beta0']:>16.12g}")
        rows.append(f"{'r_squared':<10} {self.targets['r_squared']:>14.10g} {self.measured['r_squared']:>16.12g}")
        if self.moments is not None:
            m = self.moments
            rows.append(
                f"moments    skew_x={m.skew_x:.3f} kurt_x={m.kurt_x:.3f} "
                f"skew_y={m.skew_y:.3f} kurt_y={m.kurt_y:.3f}")
        rows.append(f"tolerance {self.tolerance:g}: {'PASS' if self.ok else 'FAIL (' + ', '.join(self.failures()) + ')'}")
        return "\n".join(rows)


def verify(d: DatasetPair, constraints: ConstraintSet, tolerance: float = 1e-6) -> VerificationReport:
    """Recompute every statistic from ``d`` and compare with absolute tolerance.

    Never raises on a constraint failure; R² and the intercept are reported
    but not judged.
    """
    if not tolerance > 0:
        raise ValueError("tolerance must be positive")
    measured = {
        "n": len(d),
        "mean_x": mean(d.xs),
        "var_x": variance(d.xs),
        "mean_y": mean(d.ys),
        "var_y": variance(d.ys),
    }
    try:
        fit = linregress(d)
        measured.update(beta1=fit.beta1, beta0=fit.beta0, r_squared=fit.r_squared)
    except DegenerateDataError:
        measured.update(beta1=math.nan, beta0=math.nan, r_squared=math.nan)

    targets = {k: getattr(constraints, k) for k in CONSTRAINT_KEYS}
    targets.update(beta0=constraints.beta0, r_squared=constraints.r_squared)

    residuals, passed = {}, {}
    for k in CONSTRAINT_KEYS:
        r = abs(measured[k] - targets[k])
        residuals[k] = r
        passed[k] = r == 0 if k == "n" else bool(r <= tolerance)  # nan fails

    try:
        moments = moment_report(d)
    except DegenerateDataError:
        moments = None
    return VerificationReport(measured, targets, residuals, passed, tolerance, moments)
