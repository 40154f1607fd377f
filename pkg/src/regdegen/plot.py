"""Scatter panels with the target regression line, saved as SVG."""
from __future__ import annotations

import math
from typing import Mapping

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .constraints import ConstraintSet  # noqa: E402
from .stats import DatasetPair  # noqa: E402


def line_extent(datasets: Mapping[str, DatasetPair], pad: float = 0.1) -> tuple[float, float]:
    """x-interval covered by the drawn line: all data plus ``pad`` of the span each side."""
    lo = min(float(d.xs.min()) for d in datasets.values())
    hi = max(float(d.xs.max()) for d in datasets.values())
    span = hi - lo or 1.0
    return lo - pad * span, hi + pad * span


def build_figure(datasets: Mapping[str, DatasetPair], constraints: ConstraintSet):
    if not datasets:
        raise ValueError("nothing to plot")
    k = len(datasets)
    ncols = min(k, 2) if k <= 4 else math.ceil(math.sqrt(k))
    nrows = math.ceil(k / ncols)
    fig, axes = plt.subplots(nrows, ncols, figsize=(4 * ncols, 3.4 * nrows),
                             sharex=True, sharey=True, squeeze=False)
    x0, x1 = line_extent(datasets)
    lx = np.array([x0, x1])
    for ax, (title, d) in zip(axes.flat, datasets.items()):
        ax.scatter(d.xs, d.ys, s=22, color="tab:blue", zorder=3)
        ax.plot(lx, constraints.line(lx), color="tab:red", lw=1.2,
                label=f"Y = {constraints.beta0:.3g} + {constraints.beta1:.3g} x")
        ax.set_title(title)
        ax.legend(loc="upper left", fontsize="small", frameon=False)
    for ax in list(axes.flat)[k:]:
        ax.remove()
    fig.tight_layout()
    return fig


def save_plot(fig, path) -> None:
    with plt.rc_context({"svg.hashsalt": "regdegen", "svg.fonttype": "path"}):
        fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
