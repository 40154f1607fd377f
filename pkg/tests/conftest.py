from collections import defaultdict
from fractions import Fraction

import numpy as np
import pytest

from regdegen import ANSCOMBE, DatasetPair, XGridSpec, uniform_x
from regdegen import quartet

_acceptance = defaultdict(list)


def exact_stats(xs, ys):
    """Brute-force oracle: statistics in exact rational arithmetic.

    Floats are converted exactly (``Fraction(float)``), so the only rounding
    is the final conversion back to float.
    """
    x = [Fraction(float(v)) for v in xs]
    y = [Fraction(float(v)) for v in ys]
    n = len(x)
    mx, my = sum(x) / n, sum(y) / n
    sxx = sum((a - mx) ** 2 for a in x)
    syy = sum((b - my) ** 2 for b in y)
    sxy = sum((a - mx) * (b - my) for a, b in zip(x, y))
    b1 = sxy / sxx
    return {
        "n": n,
        "mean_x": float(mx),
        "var_x": float(sxx / (n - 1)),
        "mean_y": float(my),
        "var_y": float(syy / (n - 1)),
        "beta1": float(b1),
        "beta0": float(my - b1 * mx),
        "r_squared": float(b1 * b1 * sxx / syy) if syy else 1.0,
    }


def min_reachable_syy(d, c, triple):
    """Least-norm oracle: the smallest S_yy reachable by moving only ``triple``
    while keeping the mean and covariance targets."""
    dx, dy = d.xs - c.mean_x, d.ys - c.mean_y
    fixed = np.setdiff1d(np.arange(len(d)), triple)
    a = np.vstack([np.ones(3), dx[list(triple)]])
    rhs = np.array([-dy[fixed].sum(), c.beta1 * c.sxx - (dx[fixed] * dy[fixed]).sum()])
    free = np.linalg.lstsq(a, rhs, rcond=None)[0]
    return float(free @ free + dy[fixed] @ dy[fixed])


def assert_meets(d, c, tol):
    s = exact_stats(d.xs, d.ys)
    assert s["n"] == c.n
    for k in ("mean_x", "var_x", "mean_y", "var_y", "beta1"):
        assert abs(s[k] - getattr(c, k)) <= tol, (k, s[k], getattr(c, k))


@pytest.fixture
def anscombe():
    return ANSCOMBE


@pytest.fixture
def grid11():
    return uniform_x(XGridSpec(11, 9.0, 11.0))


@pytest.fixture
def quartet_data():
    return quartet.load_all()


@pytest.fixture
def line_data(grid11):
    return DatasetPair(grid11, ANSCOMBE.line(grid11))


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1].split("[")[0]
        _acceptance[name].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        outcomes = _acceptance[name]
        bad = sum(o != "passed" for o in outcomes)
        status = "PASS" if bad == 0 else "FAIL"
        detail = f" ({bad}/{len(outcomes)} checks failed)" if bad else f" ({len(outcomes)} checks)"
        terminalreporter.write_line(f"{status}  {name}{detail}")
