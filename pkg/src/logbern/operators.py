"""Bernstein, King, logarithmic and exponential Bernstein-type operators.

All four share the same kernel: a weighted sum of node samples against
p_{n,k} evaluated at a (possibly warped) point. The logarithmic operator
is evaluated through

    L_n f(x) = ln_mu(x) * B_n(f / ln_mu, a_n(x)),

while :func:`logarithmic_direct` keeps the literal defining sum as an
independent check.
"""
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import _kernels
from .errors import DomainError, ParameterError
from .functions import as_function
from .grid import GridFunction, as_unit_points, scalar_or_array
from .warp import WarpContext, check_mu, warp

FAMILIES = ("bernstein", "king", "logarithmic", "exponential")


def _check_n(n):
    if int(n) != n or n < 1:
        raise ParameterError(f"n must be a positive integer, got {n}")
    return int(n)


def _nodes(n):
    return np.arange(n + 1) / n


def bernstein(f, n, x):
    """Classical Bernstein polynomial B_n(f, x)."""
    n = _check_n(n)
    xs = as_unit_points(x)
    coef = as_function(f)(_nodes(n))
    return scalar_or_array(x, _kernels.bernstein_sum(coef, np.atleast_1d(xs).ravel()))


def king(f, n, x, node_fn):
    """V_n(f, x) = sum_k f(k/n) p_{n,k}(r_n(x)) for a node map r_n into [0, 1]."""
    n = _check_n(n)
    xs = np.atleast_1d(as_unit_points(x)).ravel()
    r = np.asarray(node_fn(xs), dtype=float).ravel()
    if np.any(~np.isfinite(r)) or np.any(r < 0.0) or np.any(r > 1.0):
        raise DomainError("node function must map [0, 1] into [0, 1]")
    coef = as_function(f)(_nodes(n))
    return scalar_or_array(x, _kernels.bernstein_sum(coef, r))


def logarithmic(f, mu, n, x):
    """L_n(f, x), the operator reproducing ln(1 + mu + x).

    Exact endpoint interpolation: L_n f(0) = f(0) and L_n f(1) = f(1).
    """
    mu = check_mu(mu)
    n = _check_n(n)
    f = as_function(f)
    xs = np.atleast_1d(as_unit_points(x)).ravel()
    nodes = _nodes(n)
    coef = f(nodes) / np.log1p(mu + nodes)
    a = warp(WarpContext(mu, n), xs)
    out = np.log1p(mu + xs) * _kernels.bernstein_sum(coef, a)
    ends = (xs == 0.0) | (xs == 1.0)
    if ends.any():
        out[ends] = f(xs[ends])
    return scalar_or_array(x, out)


def logarithmic_direct(f, mu, n, x):
    """Literal defining sum of L_n with plain binomials and math.fsum.

    Slow and independent of the log-space kernel; intended as an oracle
    for moderate n (binomials are exact integers, powers are direct).
    """
    mu = check_mu(mu)
    n = _check_n(n)
    f = as_function(f)
    ctx = WarpContext(mu, n)
    xs = np.atleast_1d(as_unit_points(x)).ravel()
    vals = [float(v) for v in f(_nodes(n))]
    out = np.empty_like(xs)
    for i, xi in enumerate(xs):
        a = math.log1p(xi * ctx.eps_n) / math.log1p(ctx.eps_n)
        lx = math.log(1.0 + mu + xi)
        terms = [vals[k] * lx / math.log(1.0 + mu + k / n)
                 * math.comb(n, k) * a ** k * (1.0 - a) ** (n - k) for k in range(n + 1)]
        out[i] = math.fsum(terms)
    return scalar_or_array(x, out)


def exponential_comparison(f, mu, n, x):
    """G_n(f, x): the Bernstein-type operator reproducing e^{mu x} and e^{2 mu x}."""
    mu = check_mu(mu)
    n = _check_n(n)
    f = as_function(f)
    xs = np.atleast_1d(as_unit_points(x)).ravel()
    nodes = _nodes(n)
    coef = f(nodes) * np.exp(-mu * nodes)
    a = np.expm1(mu * xs / n) / math.expm1(mu / n)
    a = np.clip(a, 0.0, 1.0)
    a[xs == 0.0], a[xs == 1.0] = 0.0, 1.0
    out = np.exp(mu * xs) * _kernels.bernstein_sum(coef, a)
    return scalar_or_array(x, out)


@dataclass(frozen=True)
class OperatorSpec:
    family: str
    n: int
    mu: Optional[float] = None
    node_fn: Optional[Callable] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParameterError(f"family must be one of {FAMILIES}, got {self.family!r}")
        object.__setattr__(self, "n", _check_n(self.n))
        if self.family in ("logarithmic", "exponential"):
            if self.mu is None:
                raise ParameterError(f"{self.family} operator requires mu")
            object.__setattr__(self, "mu", check_mu(self.mu))
        if self.family == "king" and self.node_fn is None:
            raise ParameterError("king operator requires a node function")

    def apply(self, f, x):
        if self.family == "bernstein":
            return bernstein(f, self.n, x)
        if self.family == "king":
            return king(f, self.n, x, self.node_fn)
        if self.family == "logarithmic":
            return logarithmic(f, self.mu, self.n, x)
        return exponential_comparison(f, self.mu, self.n, x)


def operator_on_grid(f, spec, grid):
    """Evaluate ``spec`` applied to ``f`` at every grid node."""
    x = np.atleast_1d(as_unit_points(grid, "grid")).ravel()
    return GridFunction(x, np.atleast_1d(spec.apply(f, x)))


def korovkin_h(mu, lambda1, lambda2, x0, x):
    """Nonnegative element of span{1, ln_mu^l1, ln_mu^l2} vanishing only at x0."""
    mu = check_mu(mu)
    if not 0.0 < lambda1 < lambda2:
        raise ParameterError(f"need 0 < lambda1 < lambda2, got {lambda1}, {lambda2}")
    x0 = float(as_unit_points(x0, "x0"))
    xs = as_unit_points(x)
    ratio = np.log1p(mu + xs) / math.log1p(mu + x0)
    h = (1.0 + lambda2 / (lambda1 - lambda2) * ratio ** lambda1
         + lambda1 / (lambda2 - lambda1) * ratio ** lambda2)
    return scalar_or_array(x, h)
