import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from logbern import warp
from logbern.errors import ParameterError
from logbern.grid import uniform_grid

mus = st.floats(1e-3, 20.0)
degrees = st.integers(1, 5000)


def closed_form_maximiser(mu, n):
    # zero of the gap derivative
    eps = 1.0 / (n * (1.0 + mu))
    return 1.0 / math.log1p(eps) - 1.0 / eps


@pytest.mark.parametrize("mu,n,x_star,gamma", [
    # mpmath 50-digit values, tests/oracles/generate.py
    (1.0, 10, 0.49593431428787151512, 0.0060985688929286068143),
    (1.0, 100, 0.49958437171306322459, 0.00062344247348427479201),
    (1.0, 10000, 0.49999583343749670151, 6.2498437549911404149e-6),
    (0.2688, 30, 0.4978389931208397224, 0.0032415163738921393761),
])
def test_gamma_matches_oracle(mu, n, x_star, gamma):
    xs, g = warp.gamma_n(warp.WarpContext(mu, n))
    assert g == pytest.approx(gamma, rel=1e-11)
    assert xs == pytest.approx(x_star, abs=1e-5)


@given(mus, degrees)
def test_maximiser_near_closed_form(mu, n):
    xs, g = warp.gamma_n(warp.WarpContext(mu, n))
    ctx = warp.WarpContext(mu, n)
    assert g >= warp.warp_gap(ctx, closed_form_maximiser(mu, n)) * (1 - 1e-9)


def test_gap_oracle():
    assert warp.warp_gap(warp.WarpContext(1.0, 50), 0.25) == pytest.approx(0.00093438956275690517675, rel=1e-13)


@given(mus, degrees)
def test_warp_range_domination_and_shape(mu, n):
    ctx = warp.WarpContext(mu, n)
    x = uniform_grid(401)
    a = warp.warp(ctx, x)
    assert a[0] == 0.0 and a[-1] == 1.0
    assert np.all(a >= x)
    assert np.all(np.diff(a) >= 0.0)
    assert np.all(warp.warp_derivative(ctx, x) > 0.0)
    assert np.all(warp.warp_second_derivative(ctx, x) < 0.0)


@given(mus, st.integers(1, 2000), st.floats(0.0, 1.0))
def test_gap_consistent_with_naive_difference(mu, n, x):
    ctx = warp.WarpContext(mu, n)
    assert warp.warp_gap(ctx, x) == pytest.approx(warp.warp(ctx, x) - x, abs=1e-14)
    assert warp.warp_gap(ctx, x) >= 0.0


@given(mus, st.floats(0.0, 1.0))
def test_warp_decreases_in_degree(mu, x):
    vals = [warp.warp(warp.WarpContext(mu, n), x) for n in (1, 2, 5, 20, 100)]
    assert all(b <= a + 1e-15 for a, b in zip(vals, vals[1:]))


def test_derivatives_match_sympy():
    t, e = sp.symbols("t e", positive=True)
    a = sp.log(1 + t * e) / sp.log(1 + e)
    d1, d2 = sp.lambdify((t, e), sp.diff(a, t)), sp.lambdify((t, e), sp.diff(a, t, 2))
    ctx = warp.WarpContext(0.7, 13)
    for x in (0.0, 0.2, 0.9):
        assert warp.warp_derivative(ctx, x) == pytest.approx(d1(x, ctx.eps_n), rel=1e-12)
        assert warp.warp_second_derivative(ctx, x) == pytest.approx(d2(x, ctx.eps_n), rel=1e-10)


def test_asymptotics_report():
    rep = warp.warp_gap_asymptotics(1.0, [100, 1000, 10000])
    assert rep.limit == 0.0625
    assert rep.n_gamma[0] < rep.n_gamma[1] < rep.n_gamma[2] < rep.limit
    assert rep.max_deviation[2] < rep.max_deviation[1] < rep.max_deviation[0]
    assert rep.sqrt_n_gamma[-1] < rep.sqrt_n_gamma[0]


def test_asymptotics_requires_increasing_list():
    with pytest.raises(ParameterError):
        warp.warp_gap_asymptotics(1.0, [10, 10])


@pytest.mark.parametrize("mu", [0.0, -1.0, float("nan"), float("inf"), "x"])
def test_bad_mu(mu):
    with pytest.raises(ParameterError):
        warp.check_mu(mu)


@pytest.mark.parametrize("n", [0, -3, 2.5])
def test_bad_degree(n):
    with pytest.raises(ParameterError):
        warp.WarpContext(1.0, n)


def test_ln_mu_domain():
    assert warp.ln_mu(1.0, 0.0) == pytest.approx(math.log(2.0))
    with pytest.raises(ValueError):
        warp.ln_mu(1.0, 1.5)
