import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from logbern import core
from logbern.grid import uniform_grid


def _moment_exact(n, s, x):
    x = Fraction(x)
    return sum((k - n * x) ** s * math.comb(n, k) * x**k * (1 - x) ** (n - k) for k in range(n + 1))


@pytest.mark.parametrize("n", [1, 3, 16, 64])
@pytest.mark.parametrize("s", [0, 1, 2, 3, 4])
def test_moments_against_rational_sums(n, s, backend):
    xs = [Fraction(j, 20) for j in range(21)]
    got = core.algebraic_moment(n, s, np.array([float(x) for x in xs]))
    ref = np.array([float(_moment_exact(n, s, x)) for x in xs])
    np.testing.assert_allclose(got, ref, rtol=1e-11, atol=1e-11 * n ** (s / 2))


def test_partition_of_unity_and_positivity(backend):
    x = uniform_grid(501)
    for n in (1, 10, 1000):
        w = core.basis(n, x)
        assert np.min(w) >= 0.0
        np.testing.assert_allclose(w.sum(axis=1), 1.0, atol=1e-12)


def test_binomial_weight_scalar():
    assert core.binomial_weight(4, 2, 0.5) == pytest.approx(6 / 16, rel=1e-15)


@pytest.mark.parametrize("n", [0, 1, 5, 30])
def test_weight_integral(n):
    for k in range(n + 1):
        assert core.weight_integral(n, k) == pytest.approx(1.0 / (n + 1), abs=1e-12)


def test_first_absolute_moment_oracle():
    # 50-digit mpmath sum, see tests/oracles/generate.py
    assert core.first_absolute_moment(10, 0.37) == pytest.approx(0.1240223694138553133, rel=1e-13)


@given(st.integers(1, 1024), st.floats(0.0, 1.0))
def test_first_absolute_moment_bound(n, x):
    assert core.first_absolute_moment(n, x) < 0.5 / math.sqrt(n)


@given(st.integers(1, 200), st.floats(0.0, 1.0), st.floats(0.01, 0.5))
def test_tail_sum_chebyshev(n, x, delta):
    # second-moment tail estimate
    assert core.tail_sum(n, x, delta) <= x * (1 - x) / (n * delta * delta) + 1e-12


def test_moment_growth_check():
    rep = core.moment_growth_check([16, 64, 256, 1024], 4, uniform_grid(101))
    assert rep.bounded
    # n^-2 T_{n,4}(1/2) tends to 3/16
    assert rep.ratios[-1] == pytest.approx(3 / 16, rel=1e-3)


def test_moment_growth_rejects_odd_order():
    with pytest.raises(ValueError):
        core.moment_growth_check([4, 8], 3, uniform_grid(11))


def test_bad_degree():
    with pytest.raises(ValueError):
        core.basis(-2, 0.5)
