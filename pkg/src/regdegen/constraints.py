from __future__ import annotations

from dataclasses import dataclass

from .errors import InfeasibleError


@dataclass(frozen=True)
class ConstraintSet:
    """The six regression targets a generated dataset must hit.

    The intercept is derived, never stored.  ``var_y < beta1**2 * var_x``
    would need R² > 1 and is rejected.
    """

    n: int
    mean_x: float
    var_x: float
    mean_y: float
    var_y: float
    beta1: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 3:
            raise ValueError(f"n must be an integer >= 3, got {self.n}")
        if not self.var_x > 0:
            raise ValueError(f"var_x must be positive, got {self.var_x}")
        if not self.var_y > 0:
            raise ValueError(f"var_y must be positive, got {self.var_y}")
        # relative slack so exact-boundary inputs (R² == 1) survive rounding
        bound = self.beta1 * self.beta1 * self.var_x
        if self.var_y < bound * (1.0 - 1e-12):
            raise InfeasibleError(
                f"infeasible: R² would exceed 1 (var_y={self.var_y} < beta1²·var_x={bound})",
                stage="constraints",
            )

    @property
    def beta0(self) -> float:
        return self.mean_y - self.beta1 * self.mean_x

    @property
    def sxx(self) -> float:
        return (self.n - 1) * self.var_x

    @property
    def syy(self) -> float:
        return (self.n - 1) * self.var_y

    @property
    def r_squared(self) -> float:
        return self.beta1 * self.beta1 * self.var_x / self.var_y

    def line(self, x):
        """Target regression line ``beta0 + beta1 * x``."""
        return self.beta0 + self.beta1 * x


ANSCOMBE = ConstraintSet(n=11, mean_x=9.0, var_x=11.0, mean_y=7.5, var_y=4.125, beta1=0.5)
