"""Build many different datasets that all share one regression line.

Given N, the x and y means and variances and the slope, build x-vectors,
seed y-values from a shape function and re-solve a few y-values so every
dataset hits the targets exactly, as in Anscombe's quartet.
"""
from .adjust import (
    AdjustmentPlan, AffineReduction, GroupPlan, adjust_group, adjust_triple, affine_reduction,
    constraint_residuals, default_triple, generate, mid_index, solve_three_point_minimal,
)
from .constraints import ANSCOMBE, ConstraintSet
from .errors import DegenerateDataError, InfeasibleError
from .shapes import (
    BimodalNoise, LinearNoise, LinearOutlier, OnLine, Quadratic, QuadBranch, QuadraticParams,
    Quartic, ShapeSpec, eval_line, evaluate_shape, reflect_across_line, shape_bimodal_noise, shape_on_line,
    shape_linear_noise, shape_linear_outlier, shape_quadratic, shape_quartic, solve_quadratic_shape,
)
from .stats import (
    DatasetPair, MomentReport, RegressionFit, covariance, linregress, mean, variance, zscore_moment,
)
from .verify import VerificationReport, moment_report, verify
from .xgen import Branch, XGridSpec, bimodal_x, custom_x, uniform_x

__version__ = "0.1.0"
