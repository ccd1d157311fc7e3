"""Hot loops: binomial basis weights and Bernstein-type weighted sums.

Every operator family in the package funnels through two kernels,
``basis_matrix`` and ``bernstein_sum``. Each has a numba implementation
and a vectorised numpy implementation; the active one is chosen at import
time from ``LOGBERN_JIT`` and can be switched with :func:`set_backend`.

Weights are evaluated in log space,

    log p_{n,k}(y) = log C(n, k) + k log y + (n - k) log1p(-y),

with y = 0 and y = 1 treated as exact Kronecker cases. The log binomial
row is built from exact integer binomials, so its rounding error is one
ulp of log C(n, k) rather than the several ulps of a log-gamma difference.
"""
import math
from functools import lru_cache

import numpy as np
from scipy.special import xlog1py, xlogy

from ._jit import HAVE_NUMBA, JIT_REQUESTED, njit


@lru_cache(maxsize=256)
def _log_binomial_row_cached(n):
    row = np.empty(n + 1)
    c = 1
    for k in range(n + 1):
        row[k] = math.log(c)
        c = c * (n - k) // (k + 1)
    row.setflags(write=False)
    return row


def log_binomial_row(n):
    """Return ``[log C(n, 0), ..., log C(n, n)]`` as a read-only array."""
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got {n}")
    return _log_binomial_row_cached(int(n))


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------


def _basis_matrix_numpy(n, y):
    k = np.arange(n + 1, dtype=float)
    yy = y[:, None]
    logw = log_binomial_row(n)[None, :] + xlogy(k, yy) + xlog1py(n - k, -yy)
    return np.exp(logw)


def _bernstein_sum_numpy(coef, y):
    n = coef.shape[0] - 1
    if n < 0:
        return np.zeros_like(y)
    w = _basis_matrix_numpy(n, y)
    # contiguous reduction along the last axis uses pairwise summation
    return np.sum(w * coef[None, :], axis=1)


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------


@njit(cache=True)
def _basis_matrix_jit(logbinom, y):
    n = logbinom.shape[0] - 1
    m = y.shape[0]
    out = np.zeros((m, n + 1))
    for i in range(m):
        yi = y[i]
        if yi == 0.0:
            out[i, 0] = 1.0
        elif yi == 1.0:
            out[i, n] = 1.0
        else:
            ly = math.log(yi)
            l1 = math.log1p(-yi)
            for k in range(n + 1):
                out[i, k] = math.exp(logbinom[k] + k * ly + (n - k) * l1)
    return out


@njit(cache=True)
def _bernstein_sum_jit(coef, logbinom, y):
    n = coef.shape[0] - 1
    m = y.shape[0]
    out = np.zeros(m)
    if n < 0:
        return out
    for i in range(m):
        yi = y[i]
        if yi == 0.0:
            out[i] = coef[0]
            continue
        if yi == 1.0:
            out[i] = coef[n]
            continue
        ly = math.log(yi)
        l1 = math.log1p(-yi)
        # Neumaier compensated accumulation
        s = 0.0
        c = 0.0
        for k in range(n + 1):
            v = coef[k] * math.exp(logbinom[k] + k * ly + (n - k) * l1)
            t = s + v
            if abs(s) >= abs(v):
                c += (s - t) + v
            else:
                c += (v - t) + s
            s = t
        out[i] = s + c
    return out


def _basis_matrix_numba(n, y):
    return _basis_matrix_jit(np.asarray(log_binomial_row(n)), y)


def _bernstein_sum_numba(coef, y):
    n = coef.shape[0] - 1
    if n < 0:
        return np.zeros_like(y)
    return _bernstein_sum_jit(coef, np.asarray(log_binomial_row(n)), y)


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

_BACKENDS = {
    "numpy": (_basis_matrix_numpy, _bernstein_sum_numpy),
    "numba": (_basis_matrix_numba, _bernstein_sum_numba),
}

_active = "numba" if (HAVE_NUMBA and JIT_REQUESTED) else "numpy"


def get_backend():
    return _active


def set_backend(name):
    """Select ``"numba"`` or ``"numpy"`` kernels; returns the previous name."""
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    previous, _active = _active, name
    return previous


def basis_matrix(n, y):
    """Matrix ``W[i, k] = p_{n,k}(y[i])`` for points ``y`` in [0, 1]."""
    y = np.ascontiguousarray(np.atleast_1d(np.asarray(y, dtype=float)).ravel())
    return _BACKENDS[_active][0](int(n), y)


def bernstein_sum(coef, y):
    """``sum_k coef[k] p_{n,k}(y)`` with ``n = len(coef) - 1``, over 1-d ``y``."""
    coef = np.ascontiguousarray(np.asarray(coef, dtype=float))
    y = np.ascontiguousarray(np.atleast_1d(np.asarray(y, dtype=float)).ravel())
    return _BACKENDS[_active][1](coef, y)


def warmup():
    """Trigger JIT compilation so later timings exclude it."""
    if HAVE_NUMBA:
        y = np.array([0.0, 0.5, 1.0])
        _basis_matrix_numba(3, y)
        _bernstein_sum_numba(np.ones(4), y)
