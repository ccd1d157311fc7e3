"""Shape preservation: divided differences, derivative formulas, BV_mu norm."""
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from . import _kernels
from .errors import InputError, ParameterError, PreconditionError
from .functions import as_function, f_mu
from .grid import as_unit_points, scalar_or_array, uniform_grid
from .operators import logarithmic
from .warp import WarpContext, check_mu, warp, warp_derivative, warp_second_derivative


@dataclass(frozen=True)
class DividedDifferences:
    order: int
    values: np.ndarray


@dataclass(frozen=True)
class BVNorm:
    variation: float
    f0: float
    norm: float


def divided_diff(f, mu, n, order):
    """Scaled forward differences of f_mu on the nodes k/n.

    order 1: n [f_mu((k+1)/n) - f_mu(k/n)],                      k = 0..n-1
    order 2: n^2 [f_mu((k+2)/n) - 2 f_mu((k+1)/n) + f_mu(k/n)],  k = 0..n-2
    """
    if order not in (1, 2):
        raise ParameterError(f"order must be 1 or 2, got {order}")
    if int(n) != n or n < order:
        raise ParameterError(f"need n >= order, got n={n}")
    n = int(n)
    vals = f_mu(f, mu)(np.arange(n + 1) / n)
    if order == 1:
        return DividedDifferences(1, n * np.diff(vals))
    return DividedDifferences(2, n * n * (vals[2:] - 2.0 * vals[1:-1] + vals[:-2]))


def _first_sum(f, mu, n, a):
    """sum_k Delta_1 f_mu(k/n) p_{n-1,k}(a)."""
    return _kernels.bernstein_sum(divided_diff(f, mu, n, 1).values, a)


def lnf_derivative(f, mu, n, x):
    """Derivative of x -> L_n(f, x) from the divided-difference formula."""
    mu = check_mu(mu)
    f = as_function(f)
    xs = np.atleast_1d(as_unit_points(x)).ravel()
    ctx = WarpContext(mu, n)
    a = warp(ctx, xs)
    coef = f_mu(f, mu)(np.arange(n + 1) / n)
    b = _kernels.bernstein_sum(coef, a)
    val = b / (1.0 + mu + xs) + np.log1p(mu + xs) * warp_derivative(ctx, xs) * _first_sum(f, mu, n, a)
    return scalar_or_array(x, val)


def ratio_derivative(f, mu, n, x):
    """First derivative of L_n f / ln_mu."""
    mu = check_mu(mu)
    xs = np.atleast_1d(as_unit_points(x)).ravel()
    ctx = WarpContext(mu, n)
    a = warp(ctx, xs)
    return scalar_or_array(x, warp_derivative(ctx, xs) * _first_sum(f, mu, n, a))


def second_derivative_ratio(f, mu, n, x):
    """Second derivative of L_n f / ln_mu."""
    mu = check_mu(mu)
    xs = np.atleast_1d(as_unit_points(x)).ravel()
    ctx = WarpContext(mu, n)
    a = warp(ctx, xs)
    val = warp_second_derivative(ctx, xs) * _first_sum(f, mu, n, a)
    if n >= 2:
        d2 = divided_diff(f, mu, n, 2).values
        val = val + (n - 1) / n * warp_derivative(ctx, xs) ** 2 * _kernels.bernstein_sum(d2, a)
    return scalar_or_array(x, val)


def _check_partition(partition):
    p = np.asarray(partition, dtype=float).ravel()
    if p.size < 2 or p[0] != 0.0 or p[-1] != 1.0 or np.any(np.diff(p) <= 0.0):
        raise InputError("partition must be strictly increasing from 0 to 1")
    return p


def bv_norm(f, mu, partition):
    """Var(f / ln_mu) over ``partition`` plus |f(0)|.

    ``f`` is a callable or an array of f-values on the partition. The
    variation is a lower bound for the true one, exact for piecewise
    monotone f_mu whose turning points belong to the partition.
    """
    mu = check_mu(mu)
    p = _check_partition(partition)
    if callable(f):
        fv = np.asarray(as_function(f)(p), dtype=float)
    else:
        fv = np.asarray(f, dtype=float).ravel()
        if fv.shape != p.shape:
            raise InputError("sampled values must match the partition length")
    ratio = fv / np.log1p(mu + p)
    variation = float(np.sum(np.abs(np.diff(ratio))))
    f0 = float(fv[0])
    return BVNorm(variation, f0, variation + abs(f0))


def turning_points(f, mu, n, grid_points=2001):
    """Interior zeros of (L_n f / ln_mu)', bracketed on a grid and refined."""
    x = uniform_grid(grid_points)
    d = np.asarray(ratio_derivative(f, mu, n, x))
    roots = []
    for i in np.nonzero(np.sign(d[:-1]) * np.sign(d[1:]) < 0)[0]:
        roots.append(brentq(lambda t: ratio_derivative(f, mu, n, t), x[i], x[i + 1], xtol=1e-14))
    roots.extend(x[1:-1][d[1:-1] == 0.0])
    return np.array(sorted(roots))


@dataclass
class BVContractionReport:
    n: int
    norm_f: float
    norm_lnf: float
    margin: float  # norm_f - norm_lnf
    passed: bool
    turning_points: np.ndarray = field(repr=False, default=None)


def bv_contraction_check(f, mu, n, grid_points=2001, tol=1e-9):
    """Compare ||L_n f||_{BV_mu} with ||f||_{BV_mu} on one shared partition.

    The partition holds a uniform grid, the nodes k/n and the turning points
    of L_n f / ln_mu, so the L_n side is exact and the f side is at least
    the node variation that bounds it.
    """
    mu = check_mu(mu)
    f = as_function(f)
    tp = turning_points(f, mu, n, grid_points)
    part = np.unique(np.concatenate([uniform_grid(grid_points), np.arange(n + 1) / n, tp]))
    lnf = logarithmic(f, mu, n, part)
    norm_l = bv_norm(lnf, mu, part).norm
    norm_f = bv_norm(f, mu, part).norm
    margin = norm_f - norm_l
    return BVContractionReport(int(n), norm_f, norm_l, margin, bool(margin >= -tol), tp)


CASES = ("increasing_convex", "decreasing_concave")


@dataclass
class MonotoneReport:
    case: str
    n_list: list
    min_step_gap: list  # min over interior grid of sign * (L_n f - L_{n+1} f)
    min_limit_gap: list  # min over interior grid of sign * (L_{n+1} f - f)
    passed: bool


def monotone_in_n_check(f, mu, n_list, grid=None, case="increasing_convex", tol=1e-10):
    """Check L_n f >= L_{n+1} f >= f (case a) or the reversed chain (case b).

    The shape class of f_mu is verified on the grid plus the nodes of every
    degree before anything is evaluated.
    """
    if case not in CASES:
        raise ParameterError(f"case must be one of {CASES}, got {case!r}")
    mu = check_mu(mu)
    f = as_function(f)
    x = uniform_grid() if grid is None else as_unit_points(grid).ravel()
    sign = 1.0 if case == "increasing_convex" else -1.0

    pts = [x, uniform_grid(4001)]
    pts += [np.arange(m + 1) / m for n in n_list for m in (n, n + 1)]
    check = np.unique(np.concatenate(pts))
    check = check[np.concatenate([[True], np.diff(check) > 1e-9])]
    vals = sign * f_mu(f, mu)(check)
    scale = 1e-12 * max(1.0, float(np.max(np.abs(vals))))
    slopes = np.diff(vals) / np.diff(check)
    if np.any(np.diff(vals) < -scale) or np.any(np.diff(slopes) * np.diff(check)[1:] < -scale):
        raise PreconditionError(f"f_mu is not {case.replace('_', ' and ')} on the check grid")

    inner = x[(x > 0.0) & (x < 1.0)]
    fx = f(inner)
    step, limit = [], []
    for n in n_list:
        ln = logarithmic(f, mu, n, inner)
        ln1 = logarithmic(f, mu, n + 1, inner)
        step.append(float(np.min(sign * (ln - ln1))))
        limit.append(float(np.min(sign * (ln1 - fx))))
    passed = min(step) >= -tol and min(limit) >= -tol
    return MonotoneReport(case, list(n_list), step, limit, passed)
