"""Removal of the multiplicative noise factor (1 + mu(t) + x) with L_n.

Samples are modelled as y_k = (1 + mu + k/n) f(k/n). Taking logarithms
turns the noise into the additive term ln_mu, which L_n reproduces, so

    f(x) ~ exp(L_n(ln g, x)) / (1 + mu + x),
    L_n(ln g, x) = ln_mu(x) sum_k [ln y_k / ln_mu(k/n)] p_{n,k}(a_n(x)).
"""
import csv
import math
import os
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .errors import InputError
from .functions import as_function, reference_signal
from .grid import GridFunction, as_unit_points, uniform_grid
from .warp import WarpContext, check_mu, warp

REFERENCE_MUS = (0.2688, 0.9169, 1.1294)
REFERENCE_DEGREES = (10, 30)
# reference maximum reconstruction errors per (mu, n)
REFERENCE_ERRORS = {
    (0.2688, 10): 0.1109, (0.2688, 30): 0.0343,
    (0.9169, 10): 0.0658, (0.9169, 30): 0.0202,
    (1.1294, 10): 0.0622, (1.1294, 30): 0.0191,
}
SEED_ENV = "LOGBERN_SEED"


@dataclass(frozen=True)
class NoisySignal:
    n: int
    samples: np.ndarray  # y_k at k/n, k = 0..n
    mu_t: float

    def __post_init__(self):
        y = np.asarray(self.samples, dtype=float).ravel()
        if int(self.n) != self.n or self.n < 1:
            raise InputError(f"n must be a positive integer, got {self.n}")
        if y.shape[0] != self.n + 1:
            raise InputError(f"expected {self.n + 1} samples, got {y.shape[0]}")
        bad = np.nonzero(~(y > 0.0) | ~np.isfinite(y))[0]
        if bad.size:
            raise InputError(f"sample {int(bad[0])} is not a positive finite number: {y[bad[0]]}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "samples", y)
        object.__setattr__(self, "mu_t", check_mu(self.mu_t))

    @property
    def nodes(self):
        return np.arange(self.n + 1) / self.n


@dataclass(frozen=True)
class DenoiseResult:
    reconstruction: GridFunction
    n: int
    mu_t: float
    max_error: Optional[float] = None


def synthesize_noisy(f, mu_t, n):
    """Noise-factor samples y_k = (1 + mu_t + k/n) f(k/n)."""
    mu_t = check_mu(mu_t)
    f = as_function(f)
    nodes = np.arange(n + 1) / n
    fv = np.asarray(f(nodes), dtype=float)
    if np.any(~(fv > 0.0)):
        k = int(np.nonzero(~(fv > 0.0))[0][0])
        raise InputError(f"signal must be positive; f({nodes[k]}) = {fv[k]}")
    return NoisySignal(n, (1.0 + mu_t + nodes) * fv, mu_t)


def log_operator_of_samples(signal, x):
    """L_n(ln g, x) computed from the raw samples."""
    mu, n = signal.mu_t, signal.n
    nodes = signal.nodes
    coef = np.log(signal.samples) / np.log1p(mu + nodes)
    a = warp(WarpContext(mu, n), x)
    out = np.log1p(mu + x) * _kernels.bernstein_sum(coef, a)
    ends = (x == 0.0) | (x == 1.0)
    out[ends] = np.log(signal.samples[np.where(x[ends] == 0.0, 0, n)])
    return out


def denoise(signal, grid=None, truth=None):
    """Reconstruct f on ``grid`` (default 1001 points) from noisy samples."""
    if not isinstance(signal, NoisySignal):
        raise InputError("denoise expects a NoisySignal")
    x = uniform_grid() if grid is None else np.atleast_1d(as_unit_points(grid, "grid")).ravel()
    rec = np.exp(log_operator_of_samples(signal, x)) / (1.0 + signal.mu_t + x)
    result = DenoiseResult(GridFunction(x, rec), signal.n, signal.mu_t)
    if truth is not None:
        result = DenoiseResult(result.reconstruction, signal.n, signal.mu_t,
                               max_reconstruction_error(result, truth))
    return result


def max_reconstruction_error(result, truth):
    """sup over the result's grid of |reconstruction - truth|."""
    return result.reconstruction.sup_distance(as_function(truth))


def sample_noise_levels(count, sigma=0.5, seed=None):
    """Draw positive noise levels from N(0, sigma^2), rejecting draws <= 0.

    ``seed`` defaults to the ``LOGBERN_SEED`` environment variable.
    """
    if seed is None:
        raw = os.environ.get(SEED_ENV)
        seed = int(raw) if raw not in (None, "") else None
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        draw = float(rng.normal(0.0, sigma))
        if draw > 0.0:
            out.append(draw)
    return out


def _fmt(v):
    return f"{v:.12g}"


def write_case_csv(path, x, truth, noisy, reconstruction):
    """CSV with columns x, truth, noisy, reconstruction; written via temp file + rename."""
    tmp = f"{path}.tmp"
    with open(tmp, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "truth", "noisy", "reconstruction"])
        for row in zip(x, truth, noisy, reconstruction):
            w.writerow(["" if (isinstance(v, float) and math.isnan(v)) else _fmt(v) for v in row])
    os.replace(tmp, path)


def case_filename(index, mu, n):
    return f"case_mu{index}_n{n}.csv"


def reference_suite(grid_points=1001, out_dir=None, f=None):
    """Run the six (mu, n) reconstructions of the reference signal.

    Returns one dict per case with the measured and quoted max errors.
    When ``out_dir`` is given, each case's series is written there.
    """
    f = reference_signal() if f is None else as_function(f)
    x = uniform_grid(grid_points)
    rows = []
    for i, mu in enumerate(REFERENCE_MUS, start=1):
        for n in REFERENCE_DEGREES:
            sig = synthesize_noisy(f, mu, n)
            res = denoise(sig, x, truth=f)
            row = {"case": f"mu{i}_n{n}", "mu": mu, "n": n, "max_error": res.max_error,
                   "reference_error": REFERENCE_ERRORS[(mu, n)],
                   "min_reconstruction": float(np.min(res.reconstruction.values))}
            if out_dir is not None:
                os.makedirs(out_dir, exist_ok=True)
                path = os.path.join(out_dir, case_filename(i, mu, n))
                fx = f(x)
                write_case_csv(path, x, fx, (1.0 + mu + x) * fx, res.reconstruction.values)
                row["path"] = path
            rows.append(row)
    return rows
