"""Binomial weights p_{n,k}, their integrals, algebraic moments and tails."""
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from . import _kernels
from .errors import DomainError, ParameterError
from .grid import as_unit_points, scalar_or_array


def _check_degree(n, minimum=0):
    if int(n) != n or n < minimum:
        raise DomainError(f"degree n must be an integer >= {minimum}, got {n}")
    return int(n)


def binomial_weight(n, k, x):
    """p_{n,k}(x) = C(n,k) x^k (1-x)^(n-k), evaluated in log space.

    ``x`` may be a scalar or an array; x = 0 and x = 1 are exact.
    """
    n = _check_degree(n)
    if int(k) != k or not 0 <= k <= n:
        raise DomainError(f"index k must satisfy 0 <= k <= n, got k={k}, n={n}")
    xs = as_unit_points(x)
    w = _kernels.basis_matrix(n, xs.ravel())[:, int(k)]
    return scalar_or_array(x, w)


def basis(n, x):
    """All n+1 weights at each point: array of shape ``(len(x), n + 1)``."""
    n = _check_degree(n)
    xs = as_unit_points(x)
    return _kernels.basis_matrix(n, xs.ravel())


def weight_integral(n, k):
    """Adaptive-quadrature value of the integral of p_{n,k} over [0, 1].

    The closed form is 1/(n+1); this routine deliberately does not use it
    so that the identity can serve as a check on the weights.
    """
    n = _check_degree(n)
    if int(k) != k or not 0 <= k <= n:
        raise DomainError(f"index k must satisfy 0 <= k <= n, got k={k}, n={n}")
    k = int(k)
    if n == 0:
        return 1.0

    def integrand(t):
        return float(_kernels.basis_matrix(n, np.array([t]))[0, k])

    peak = k / n
    points = [peak] if 0.0 < peak < 1.0 else None
    value, _ = integrate.quad(integrand, 0.0, 1.0, points=points,
                              epsabs=1e-14, epsrel=1e-12, limit=200)
    return value


def algebraic_moment(n, s, x):
    """T_{n,s}(x) = sum_k (k - n x)^s p_{n,k}(x)."""
    n = _check_degree(n, minimum=1)
    if int(s) != s or s < 0:
        raise DomainError(f"moment order must be a nonnegative integer, got {s}")
    xs = as_unit_points(x).ravel()
    w = _kernels.basis_matrix(n, xs)
    k = np.arange(n + 1, dtype=float)
    terms = (k[None, :] - n * xs[:, None]) ** int(s) * w
    return scalar_or_array(x, np.sum(terms, axis=1))


@dataclass
class MomentGrowthReport:
    order: int
    n_list: list
    ratios: list  # max_x T_{n,s}(x) / n^(s/2), one per n
    growth_exponent: float
    bounded: bool
    details: dict = field(default_factory=dict)


def moment_growth_check(n_list, s, x_grid, max_exponent=0.05):
    """Empirical check of 0 <= T_{n,s} <= A n^(s/2) for even order ``s``.

    ``growth_exponent`` is the log-log slope of the normalised maximum
    between the last two degrees; the ratio counts as bounded when that
    slope does not exceed ``max_exponent``.
    """
    if int(s) != s or s < 0 or s % 2:
        raise ParameterError(f"moment order must be even and nonnegative, got {s}")
    n_list = [int(n) for n in n_list]
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ParameterError("n_list must be strictly increasing")
    x_grid = as_unit_points(x_grid).ravel()
    ratios, minima = [], []
    for n in n_list:
        t = algebraic_moment(n, s, x_grid)
        ratios.append(float(np.max(t)) / float(n) ** (s // 2))
        minima.append(float(np.min(t)))
    if len(n_list) >= 2 and ratios[-2] > 0 and ratios[-1] > 0:
        slope = math.log(ratios[-1] / ratios[-2]) / math.log(n_list[-1] / n_list[-2])
    else:
        slope = 0.0
    bounded = slope <= max_exponent and min(minima) >= -1e-12
    return MomentGrowthReport(int(s), n_list, ratios, slope, bounded, {"min_moment": minima})


def tail_sum(n, x, delta):
    """Mass of the weights with |k/n - x| > delta."""
    n = _check_degree(n, minimum=1)
    if not delta > 0:
        raise ParameterError(f"delta must be positive, got {delta}")
    x = float(as_unit_points(x))
    k = np.arange(n + 1)
    far = np.abs(k / n - x) > delta
    if not far.any():
        return 0.0
    w = _kernels.basis_matrix(n, np.array([x]))[0]
    return math.fsum(w[far])


def first_absolute_moment(n, y):
    """sum_k |y - k/n| p_{n,k}(y); classically below 1/(2 sqrt(n))."""
    n = _check_degree(n, minimum=1)
    ys = as_unit_points(y, "y").ravel()
    w = _kernels.basis_matrix(n, ys)
    dist = np.abs(ys[:, None] - np.arange(n + 1)[None, :] / n)
    return scalar_or_array(y, np.sum(dist * w, axis=1))
