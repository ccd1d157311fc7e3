"""Modulus of continuity, error bound, Voronovskaja limit and saturation class."""
import math
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import maximum_filter1d, minimum_filter1d

from .errors import ParameterError
from .functions import as_function, f_mu, saturation_function
from .grid import as_unit_points, interior_grid, scalar_or_array, uniform_grid
from .operators import logarithmic
from .warp import WarpContext, check_mu, gamma_n

MIN_MODULUS_POINTS = 20001


@dataclass(frozen=True)
class ModulusEstimate:
    delta: float
    omega: float
    grid_step: float


@dataclass
class VoronovskajaReport:
    n: int
    x: object
    scaled_residual: object  # n (L_n f(x) - f(x))
    limit_value: object
    deviation: object


@dataclass(frozen=True)
class SaturationCoefficients:
    A: float
    B: float


def modulus_of_continuity(f, delta, min_points=MIN_MODULUS_POINTS):
    """Grid lower bound for sup{|f(x) - f(y)| : |x - y| <= delta}.

    The grid step is at most delta / 10. The maximum over pairs within
    distance delta equals the largest (max - min) over windows of length
    delta, which is what the sliding filters compute.
    """
    delta = float(delta)
    if not 0.0 < delta <= 1.0:
        raise ParameterError(f"delta must lie in (0, 1], got {delta}")
    intervals = max(int(min_points) - 1, math.ceil(10.0 / delta))
    x = np.linspace(0.0, 1.0, intervals + 1)
    v = np.asarray(f(x), dtype=float)
    h = 1.0 / intervals
    span = int(math.floor(delta / h * (1.0 + 1e-12)))
    size = span + 1
    omega = float(np.max(maximum_filter1d(v, size, mode="nearest")
                         - minimum_filter1d(v, size, mode="nearest")))
    return ModulusEstimate(delta, omega, h)


def sup_error(f, mu, n, grid=None):
    """max over the grid of |L_n f - f|."""
    f = as_function(f)
    x = uniform_grid() if grid is None else as_unit_points(grid).ravel()
    return float(np.max(np.abs(logarithmic(f, mu, n, x) - f(x))))


def error_bound(f, mu, n):
    """ln(2 + mu) * omega(f_mu, 1/sqrt(n)) * (2 + sqrt(n) gamma_n)."""
    mu = check_mu(mu)
    omega = modulus_of_continuity(f_mu(f, mu), 1.0 / math.sqrt(n)).omega
    _, gamma = gamma_n(WarpContext(mu, n))
    return math.log(2.0 + mu) * omega * (2.0 + math.sqrt(n) * gamma)


def _d_kernel(f, mu, x, allow_fd):
    mu = check_mu(mu)
    xs = as_unit_points(x)
    fm = f_mu(f, mu, allow_fd=allow_fd)
    bracket = fm.d1(xs) / (1.0 + mu) + fm.d2(xs)
    val = 0.5 * np.log1p(mu + xs) * (xs - xs * xs) * bracket
    return scalar_or_array(x, val)


def differential_operator_D(f, mu, x, allow_fd=True):
    """D(f)(x) = 1/2 ln_mu(x) (x - x^2) [f_mu'/(1 + mu) + f_mu'']."""
    return _d_kernel(f, mu, x, allow_fd)


def voronovskaja_limit(f, mu, x, allow_fd=True):
    """Pointwise limit of n (L_n f - f); the same expression as D(f)."""
    return _d_kernel(f, mu, x, allow_fd)


def voronovskaja_residual(f, mu, n, x, allow_fd=True):
    f = as_function(f)
    xs = as_unit_points(x)
    scaled = n * (np.asarray(logarithmic(f, mu, n, xs)) - f(xs))
    limit = np.asarray(voronovskaja_limit(f, mu, xs, allow_fd))
    dev = np.abs(scaled - limit)
    return VoronovskajaReport(int(n), x, scalar_or_array(x, scaled),
                              scalar_or_array(x, limit), scalar_or_array(x, dev))


def saturation_solution(c, mu):
    """A ln_mu + B ln_mu exp(-x/(1 + mu)): the kernel of D."""
    return saturation_function(c.A, c.B, mu)


def saturation_residual(f, mu, x):
    """f_mu' + (1 + mu) f_mu'', which vanishes exactly on the saturation class."""
    mu = check_mu(mu)
    fm = f_mu(f, mu)
    return fm.d1(x) + (1.0 + mu) * fm.d2(x)


@dataclass
class InverseTheoremReport:
    n_list: list
    scaled_errors: list  # max_x n |L_n f(x) - f(x)|
    saturation_norm: float  # max_x |f_mu' + (1 + mu) f_mu''|
    predicted_limit: float  # saturation_norm * max_x 1/2 ln_mu(x)(x - x^2) / (1 + mu)
    limit_sup: float  # max_x |D(f)(x)|
    growth_exponent: float
    bounded: bool


def inverse_theorem_diagnostic(f, mu, n_list, grid=None, max_exponent=0.25):
    """Two-sided empirical look at n |L_n f - f| <= M versus |f_mu' + (1+mu) f_mu''| <= M.

    ``bounded`` is decided from the log-log slope of the scaled error
    between the last two degrees; a corner such as |x - 1/2| gives a
    slope near 1/2 and is flagged as unbounded.
    """
    mu = check_mu(mu)
    f = as_function(f)
    n_list = [int(n) for n in n_list]
    x = interior_grid() if grid is None else as_unit_points(grid).ravel()
    scaled = [n * float(np.max(np.abs(logarithmic(f, mu, n, x) - f(x)))) for n in n_list]
    sat = float(np.max(np.abs(saturation_residual(f, mu, x))))
    weight = float(np.max(0.5 * np.log1p(mu + x) * (x - x * x))) / (1.0 + mu)
    limit_sup = float(np.max(np.abs(differential_operator_D(f, mu, x))))
    tiny = 1e-11
    if len(n_list) >= 2 and scaled[-2] > tiny and scaled[-1] > tiny:
        slope = math.log(scaled[-1] / scaled[-2]) / math.log(n_list[-1] / n_list[-2])
    else:
        slope = -math.inf if scaled[-1] <= tiny else 0.0
    return InverseTheoremReport(n_list, scaled, sat, sat * weight, limit_sup, slope,
                                slope <= max_exponent)
