"""Sampled functions on [0, 1] and input validation helpers."""
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterError

DEFAULT_GRID_POINTS = 1001


def uniform_grid(points=DEFAULT_GRID_POINTS):
    """Equispaced nodes on [0, 1], endpoints included and exact."""
    points = int(points)
    if points < 2:
        raise ParameterError(f"a grid needs at least 2 points, got {points}")
    x = np.linspace(0.0, 1.0, points)
    x[0], x[-1] = 0.0, 1.0
    return x


def interior_grid(points=999):
    """``points`` nodes strictly inside (0, 1), half a step away from the ends."""
    h = 1.0 / points
    return (np.arange(points) + 0.5) * h


def as_unit_points(x, name="x"):
    """Coerce to a float array and check every entry lies in [0, 1]."""
    arr = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
        raise DomainError(f"{name} must lie in [0, 1]")
    return arr


def scalar_or_array(template, values):
    """Return a Python float when ``template`` was a scalar, else reshape."""
    if np.ndim(template) == 0:
        return float(np.asarray(values).reshape(-1)[0])
    return np.asarray(values).reshape(np.shape(template))


@dataclass(frozen=True)
class GridFunction:
    """Values of a function on explicit nodes in [0, 1]."""

    x: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if x.shape != v.shape or x.ndim != 1:
            raise ParameterError("grid nodes and values must be 1-d arrays of equal length")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "values", v)

    @property
    def n_nodes(self):
        return self.x.shape[0]

    def sup_distance(self, other):
        """Max absolute difference to another function or array on the same nodes."""
        if isinstance(other, GridFunction):
            other = other.values
        elif callable(other):
            other = other(self.x)
        return float(np.max(np.abs(self.values - np.asarray(other, dtype=float))))
