"""Shifted logarithm ln_mu and the warped node map a_n."""
import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .grid import as_unit_points, scalar_or_array, uniform_grid

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def check_mu(mu):
    """Validate the shift parameter and return it as a float."""
    try:
        mu = float(mu)
    except (TypeError, ValueError):
        raise ParameterError(f"mu must be a real number, got {mu!r}") from None
    if not math.isfinite(mu) or mu <= 0.0:
        raise ParameterError(f"mu must be strictly positive, got {mu}")
    return mu


def ln_mu(mu, x):
    """ln(1 + mu + x) on [0, 1]."""
    mu = check_mu(mu)
    xs = as_unit_points(x)
    return scalar_or_array(x, np.log1p(mu + xs))


def _log1p_minus_id(t):
    """log(1 + t) - t without cancellation for small t >= 0."""
    t = np.asarray(t, dtype=float)
    out = np.log1p(t) - t
    small = np.abs(t) < 1e-2
    if np.any(small):
        ts = t[small]
        acc = np.zeros_like(ts)
        # alternating series -t^2/2 + t^3/3 - ...; 12 terms reach 1e-24 at t = 1e-2
        for j in range(13, 1, -1):
            acc = acc * ts + (-1.0) ** (j + 1) / j
        out[small] = acc * ts * ts
    return out


@dataclass(frozen=True)
class WarpContext:
    """Degree and shift defining a_n(x) = log1p(x eps_n) / log1p(eps_n)."""

    mu: float
    n: int

    def __post_init__(self):
        object.__setattr__(self, "mu", check_mu(self.mu))
        if int(self.n) != self.n or self.n < 1:
            raise ParameterError(f"n must be a positive integer, got {self.n}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def eps_n(self):
        return 1.0 / (self.n * (1.0 + self.mu))

    def __call__(self, x):
        return warp(self, x)


def _warp_array(ctx, xs):
    eps = ctx.eps_n
    a = np.log1p(xs * eps) / math.log1p(eps)
    a = np.clip(a, 0.0, 1.0)
    a[xs == 0.0] = 0.0
    a[xs == 1.0] = 1.0
    return a


def warp(ctx, x):
    """a_n(x); endpoints map exactly to 0 and 1."""
    xs = as_unit_points(x)
    return scalar_or_array(x, _warp_array(ctx, np.atleast_1d(xs).ravel()))


def warp_derivative(ctx, x):
    """a_n'(x) in closed form."""
    xs = as_unit_points(x)
    eps = ctx.eps_n
    return scalar_or_array(x, eps / ((1.0 + xs * eps) * math.log1p(eps)))


def warp_second_derivative(ctx, x):
    """a_n''(x) in closed form; strictly negative."""
    xs = as_unit_points(x)
    eps = ctx.eps_n
    return scalar_or_array(x, -(eps * eps) / ((1.0 + xs * eps) ** 2 * math.log1p(eps)))


def warp_gap(ctx, x):
    """a_n(x) - x, evaluated without the cancellation of the naive difference."""
    xs = as_unit_points(x)
    flat = np.atleast_1d(xs).ravel()
    eps = ctx.eps_n
    num = _log1p_minus_id(flat * eps) - flat * _log1p_minus_id(np.array([eps]))[0]
    gap = num / math.log1p(eps)
    gap[(flat == 0.0) | (flat == 1.0)] = 0.0
    return scalar_or_array(x, gap)


def gamma_n(ctx, tol=1e-12, check_points=10001):
    """Maximiser and maximum of a_n(x) - x over [0, 1].

    The gap is strictly concave, so a golden-section search converges to
    the unique interior maximiser; a grid scan guards against a bad bracket.
    """
    lo, hi = 0.0, 1.0
    c = hi - _GOLDEN * (hi - lo)
    d = lo + _GOLDEN * (hi - lo)
    fc, fd = warp_gap(ctx, c), warp_gap(ctx, d)
    while hi - lo > tol:
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - _GOLDEN * (hi - lo)
            fc = warp_gap(ctx, c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _GOLDEN * (hi - lo)
            fd = warp_gap(ctx, d)
    x_star = 0.5 * (lo + hi)
    gamma = max(warp_gap(ctx, x_star), fc, fd)
    scan = float(np.max(warp_gap(ctx, uniform_grid(check_points))))
    assert gamma >= scan * (1.0 - 1e-9), "golden-section search missed the maximum"
    return x_star, gamma


@dataclass
class WarpAsymptoticsReport:
    mu: float
    n_list: list
    n_gamma: list  # n * gamma_n
    sqrt_n_gamma: list  # sqrt(n) * gamma_n
    max_deviation: list  # max_x |n (a_n(x) - x) - (x - x^2) / (2 (1 + mu))|
    limit: float  # 1 / (8 (1 + mu))


def warp_gap_asymptotics(mu, n_list, x_grid=None):
    """Scaled gaps n (a_n(x) - x) against their pointwise limit, per degree."""
    mu = check_mu(mu)
    n_list = [int(n) for n in n_list]
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ParameterError("n_list must be strictly increasing")
    x = uniform_grid() if x_grid is None else as_unit_points(x_grid).ravel()
    limit_curve = (x - x * x) / (2.0 * (1.0 + mu))
    n_gamma, sqrt_n_gamma, dev = [], [], []
    for n in n_list:
        ctx = WarpContext(mu, n)
        _, g = gamma_n(ctx)
        n_gamma.append(n * g)
        sqrt_n_gamma.append(math.sqrt(n) * g)
        dev.append(float(np.max(np.abs(n * warp_gap(ctx, x) - limit_curve))))
    return WarpAsymptoticsReport(mu, n_list, n_gamma, sqrt_n_gamma, dev,
                                 1.0 / (8.0 * (1.0 + mu)))
