"""Evaluable test functions, the transform f_mu = f / ln_mu, and built-ins."""
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import CapabilityError, InputError
from .grid import as_unit_points, scalar_or_array, uniform_grid
from .warp import check_mu

FD_REL_STEP = 1e-5


@dataclass(frozen=True)
class AnalyticFunction:
    """A vectorised real function on [0, 1] with optional derivatives.

    Operators only ever call ``eval``; ``d1`` and ``d2`` are consumed by
    the asymptotic analysis and may be left as ``None``.
    """

    eval: Callable
    d1: Optional[Callable] = None
    d2: Optional[Callable] = None
    positive: bool = False
    name: str = "f"

    def __call__(self, x):
        x_arr = np.asarray(x, dtype=float)
        return scalar_or_array(x, np.broadcast_to(self.eval(x_arr), x_arr.shape))

    @property
    def has_derivatives(self):
        return self.d1 is not None and self.d2 is not None

    def derivative(self, x, order=1, allow_fd=True):
        """Analytic derivative when present, else a finite-difference estimate."""
        fn = self.d1 if order == 1 else self.d2
        x_arr = np.asarray(x, dtype=float)
        if fn is not None:
            return scalar_or_array(x, np.broadcast_to(fn(x_arr), x_arr.shape))
        if not allow_fd:
            raise CapabilityError(f"{self.name}: derivative of order {order} unavailable")
        return scalar_or_array(x, finite_difference(self.eval, x_arr, order))

    def check_derivatives(self, points=201, rtol=1e-5):
        """Compare supplied derivatives with finite differences; returns the worst error.

        The error is relative to ``max(1, |reference|)``.
        """
        x = uniform_grid(points)
        worst = 0.0
        for order, fn in ((1, self.d1), (2, self.d2)):
            if fn is None:
                continue
            exact = np.broadcast_to(fn(x), x.shape)
            fd = finite_difference(self.eval, x, order)
            worst = max(worst, float(np.max(np.abs(exact - fd) / np.maximum(1.0, np.abs(fd)))))
        if worst > rtol:
            raise InputError(f"{self.name}: derivatives disagree with finite differences ({worst:.2e})")
        return worst

    def scaled(self, c):
        c = float(c)
        return AnalyticFunction(
            lambda x: c * self.eval(x),
            None if self.d1 is None else (lambda x: c * self.d1(x)),
            None if self.d2 is None else (lambda x: c * self.d2(x)),
            self.positive and c > 0,
            f"{c}*{self.name}",
        )

    def __add__(self, other):
        d1 = d2 = None
        if self.d1 is not None and other.d1 is not None:
            d1 = lambda x: self.d1(x) + other.d1(x)  # noqa: E731
        if self.d2 is not None and other.d2 is not None:
            d2 = lambda x: self.d2(x) + other.d2(x)  # noqa: E731
        return AnalyticFunction(lambda x: self.eval(x) + other.eval(x), d1, d2,
                                self.positive and other.positive, f"{self.name}+{other.name}")


def finite_difference(fn, x, order):
    """Second-order accurate differences with step max(1e-5, 1e-5 |x|).

    Stencils are shifted to one side near the ends so ``fn`` is never
    sampled outside [0, 1].
    """
    x = np.asarray(x, dtype=float)
    h = np.maximum(FD_REL_STEP, FD_REL_STEP * np.abs(x))
    fwd = x - 2 * h < 0.0
    bwd = x + 2 * h > 1.0
    ctr = ~(fwd | bwd)
    out = np.empty_like(x)
    f = lambda t: np.broadcast_to(fn(t), np.shape(t))  # noqa: E731
    if order == 1:
        out[ctr] = (f(x[ctr] + h[ctr]) - f(x[ctr] - h[ctr])) / (2 * h[ctr])
        xf, hf = x[fwd], h[fwd]
        out[fwd] = (-3 * f(xf) + 4 * f(xf + hf) - f(xf + 2 * hf)) / (2 * hf)
        xb, hb = x[bwd & ~fwd], h[bwd & ~fwd]
        out[bwd & ~fwd] = (3 * f(xb) - 4 * f(xb - hb) + f(xb - 2 * hb)) / (2 * hb)
    elif order == 2:
        out[ctr] = (f(x[ctr] + h[ctr]) - 2 * f(x[ctr]) + f(x[ctr] - h[ctr])) / h[ctr] ** 2
        xf, hf = x[fwd], h[fwd]
        out[fwd] = (2 * f(xf) - 5 * f(xf + hf) + 4 * f(xf + 2 * hf) - f(xf + 3 * hf)) / hf ** 2
        m = bwd & ~fwd
        xb, hb = x[m], h[m]
        out[m] = (2 * f(xb) - 5 * f(xb - hb) + 4 * f(xb - 2 * hb) - f(xb - 3 * hb)) / hb ** 2
    else:
        raise ValueError("only first and second differences are supported")
    return out


class TransformedFunction:
    """f_mu = f / ln_mu with derivatives by the quotient rule.

    Falls back to finite differences of f_mu itself when ``f`` carries no
    analytic derivatives and ``allow_fd`` is set.
    """

    def __init__(self, base, mu, allow_fd=True):
        self.base = as_function(base)
        self.mu = check_mu(mu)
        self.allow_fd = allow_fd

    def _log(self, x):
        return np.log1p(self.mu + x)

    def __call__(self, x):
        x_arr = np.asarray(x, dtype=float)
        return scalar_or_array(x, self.base(x_arr) / self._log(x_arr))

    def d1(self, x):
        x_arr = np.asarray(x, dtype=float)
        if self.base.has_derivatives:
            lg = self._log(x_arr)
            u = 1.0 / (1.0 + self.mu + x_arr)
            val = self.base.derivative(x_arr, 1) / lg - self.base(x_arr) * u / lg ** 2
        elif self.allow_fd:
            val = finite_difference(self, x_arr, 1)
        else:
            raise CapabilityError(f"{self.base.name}: first derivative unavailable")
        return scalar_or_array(x, val)

    def d2(self, x):
        x_arr = np.asarray(x, dtype=float)
        if self.base.has_derivatives:
            lg = self._log(x_arr)
            u = 1.0 / (1.0 + self.mu + x_arr)
            f0 = self.base(x_arr)
            f1 = self.base.derivative(x_arr, 1)
            f2 = self.base.derivative(x_arr, 2)
            # ln'' = -u^2
            val = f2 / lg - 2.0 * f1 * u / lg ** 2 + f0 * u * u / lg ** 2 + 2.0 * f0 * u * u / lg ** 3
        elif self.allow_fd:
            val = finite_difference(self, x_arr, 2)
        else:
            raise CapabilityError(f"{self.base.name}: second derivative unavailable")
        return scalar_or_array(x, val)


def as_function(f):
    """Wrap a bare callable as an AnalyticFunction without derivatives."""
    if isinstance(f, AnalyticFunction):
        return f
    if callable(f):
        return AnalyticFunction(f, name=getattr(f, "__name__", "f"))
    raise TypeError(f"expected a callable, got {type(f).__name__}")


def f_mu(f, mu, allow_fd=True):
    return TransformedFunction(f, mu, allow_fd)


# ---------------------------------------------------------------------------
# built-in functions
# ---------------------------------------------------------------------------


def ln_mu_function(mu):
    mu = check_mu(mu)
    return AnalyticFunction(
        lambda x: np.log1p(mu + x),
        lambda x: 1.0 / (1.0 + mu + x),
        lambda x: -1.0 / (1.0 + mu + x) ** 2,
        positive=True,
        name="ln_mu",
    )


def saturation_function(a, b, mu):
    """A ln_mu(x) + B ln_mu(x) exp(-x / (1 + mu)), with analytic derivatives."""
    mu = check_mu(mu)
    a, b = float(a), float(b)
    r = 1.0 / (1.0 + mu)

    def ev(x):
        lg = np.log1p(mu + x)
        return lg * (a + b * np.exp(-r * x))

    def d1(x):
        lg = np.log1p(mu + x)
        u = 1.0 / (1.0 + mu + x)
        e = np.exp(-r * x)
        return a * u + b * e * (u - r * lg)

    def d2(x):
        lg = np.log1p(mu + x)
        u = 1.0 / (1.0 + mu + x)
        e = np.exp(-r * x)
        return -a * u * u + b * e * (-u * u - 2.0 * r * u + r * r * lg)

    return AnalyticFunction(ev, d1, d2, positive=False, name=f"saturation:{a:g}:{b:g}")


def reference_signal():
    """x^2/5 + sin x + x/2 + 1/10, the positive test signal of the denoising demo."""
    return AnalyticFunction(
        lambda x: x * x / 5.0 + np.sin(x) + x / 2.0 + 0.1,
        lambda x: 2.0 * x / 5.0 + np.cos(x) + 0.5,
        lambda x: 0.4 - np.sin(x),
        positive=True,
        name="paper_f",
    )


def _const(c):
    return lambda x: np.full(np.shape(x), float(c))


BUILTIN_NAMES = ("ln_mu", "square", "sin", "exp", "abs_center", "paper_f", "saturation:A:B")


def builtin(name, mu=1.0):
    """Look up a named function; ``mu`` is only used by the mu-dependent ones."""
    if name == "ln_mu":
        return ln_mu_function(mu)
    if name == "square":
        return AnalyticFunction(lambda x: x * x, lambda x: 2.0 * x, _const(2.0), name="square")
    if name == "sin":
        return AnalyticFunction(np.sin, np.cos, lambda x: -np.sin(x), name="sin")
    if name == "exp":
        return AnalyticFunction(np.exp, np.exp, np.exp, positive=True, name="exp")
    if name == "abs_center":
        return AnalyticFunction(lambda x: np.abs(x - 0.5), name="abs_center")
    if name == "paper_f":
        return reference_signal()
    if name.startswith("saturation"):
        parts = name.split(":")
        if len(parts) != 3:
            raise InputError(f"expected saturation:A:B, got {name!r}")
        try:
            a, b = float(parts[1]), float(parts[2])
        except ValueError:
            raise InputError(f"bad saturation coefficients in {name!r}") from None
        return saturation_function(a, b, mu)
    raise InputError(f"unknown function {name!r}; choose from {', '.join(BUILTIN_NAMES)}")


def sample(f, x):
    """Evaluate on validated unit points."""
    return as_function(f)(as_unit_points(x))
