import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from regdegen import Branch, DegenerateDataError, XGridSpec, bimodal_x, custom_x, mean, uniform_x, variance
from regdegen import quartet


def test_uniform_anscombe_grid():
    x = uniform_x(XGridSpec(11, 9.0, 11.0))
    assert x.tolist() == [float(k) for k in range(4, 15)]


def test_uniform_three_points():
    x = uniform_x(XGridSpec(3, 9.0, 11.0))
    np.testing.assert_allclose(x, [5.6834, 9.0, 12.3166], atol=5e-5)


def test_uniform_even_n():
    # four-term sequence: variance = a² (4·5/12) = 1 -> a² = 0.6
    x = uniform_x(XGridSpec(4, 0.0, 1.0))
    a = math.sqrt(0.6)
    np.testing.assert_allclose(np.diff(x), a, rtol=1e-14)
    np.testing.assert_allclose(x, [-1.5 * a, -0.5 * a, 0.5 * a, 1.5 * a], atol=1e-15)
    np.testing.assert_allclose(x, [-1.16190, -0.38730, 0.38730, 1.16190], atol=5e-6)


@pytest.mark.parametrize("n", [3, 5, 11, 21, 101])
def test_uniform_matches_odd_n_closed_form(n):
    mean_x, var_x = 2.5, 7.0
    m = (n + 1) / 2
    a = math.sqrt(var_x) * math.sqrt(6 / (n * m))
    x0 = mean_x - a * m
    expected = x0 + a * np.arange(1, n + 1)
    np.testing.assert_allclose(uniform_x(XGridSpec(n, mean_x, var_x)), expected, rtol=1e-12, atol=1e-12)


def test_bimodal_anscombe():
    x = bimodal_x(XGridSpec(11, 9.0, 11.0, "bimodal", Branch.PLUS))
    assert x.tolist() == [8.0] * 10 + [19.0]
    x = bimodal_x(XGridSpec(11, 9.0, 11.0, "bimodal", Branch.MINUS))
    assert x.tolist() == [10.0] * 10 + [-1.0]
    # brute-force check of both branches
    for v in ([8.0] * 10 + [19.0], [10.0] * 10 + [-1.0]):
        assert mean(v) == 9.0 and variance(v) == 11.0


def test_bimodal_small():
    x = bimodal_x(XGridSpec(3, 0.0, 3.0, "bimodal"))
    assert x.tolist() == [-1.0, -1.0, 2.0]
    assert sum(x) == 0 and sum(x * x) == 6


def test_custom_x():
    assert custom_x([3, 1, 2]).tolist() == [1.0, 2.0, 3.0]
    assert custom_x([1, 2, 3]).tolist() == [1.0, 2.0, 3.0]
    iv = [float(v) for v in quartet.QUARTET_TEXT["IV"][0]]
    assert custom_x(iv).tolist() == [8.0] * 10 + [19.0]
    with pytest.raises(DegenerateDataError, match="all x identical"):
        custom_x([2, 2, 2])
    with pytest.raises(ValueError):
        custom_x([1, 2])


def test_spec_validation():
    with pytest.raises(ValueError):
        XGridSpec(2, 0.0, 1.0)
    with pytest.raises(ValueError):
        XGridSpec(5, 0.0, 0.0)
    with pytest.raises(ValueError):
        XGridSpec(5, 0.0, 1.0, "random")


@settings(max_examples=200, deadline=None)
@given(st.integers(3, 200), st.floats(-100, 100), st.floats(0.01, 1000),
       st.sampled_from(["uniform", "bimodal"]), st.sampled_from(list(Branch)))
def test_grid_hits_targets(n, mu, var, family, branch):
    spec = XGridSpec(n, mu, var, family, branch)
    x = uniform_x(spec) if family == "uniform" else bimodal_x(spec)
    assert len(x) == n
    assert mean(x) == pytest.approx(mu, rel=1e-10, abs=1e-10 * (1 + math.sqrt(var)))
    assert variance(x) == pytest.approx(var, rel=1e-10)
    if family == "uniform":
        assert np.all(np.diff(x) > 0)
    else:
        assert np.unique(x).size == 2
