"""Delta-derivative, sigma shift, delta integral, and the C1_rd norm.

Grid functions are immutable sample tables over a GridTimeScale.  The
delta derivative and sigma shift live on the k-truncated grid; the delta
integral is the left-rectangle sum  sum_i mu(t_i) f(t_i), which is exact
at scattered points and first-order on densely sampled segments.
"""

import numpy as np

from .errors import DegenerateScaleError, DimensionMismatchError, DomainError
from .timescales import GridTimeScale


class GridFunction:
    """Vector-valued function on a grid, stored by samples (size x n)."""

    __slots__ = ("grid", "values")

    def __init__(self, grid, values):
        if not isinstance(grid, GridTimeScale):
            raise TypeError("grid must be a GridTimeScale")
        vals = np.asarray(values, dtype=float)
        if vals.ndim == 1:
            vals = vals[:, None]
        if vals.ndim != 2 or vals.shape[0] != grid.size:
            raise DimensionMismatchError(
                f"values shape {vals.shape} does not match grid of size {grid.size}"
            )
        if not np.all(np.isfinite(vals)):
            raise DomainError("grid function values must be finite")
        vals = np.array(vals, dtype=float, copy=True)
        vals.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", vals)

    def __setattr__(self, name, value):
        raise AttributeError("GridFunction is immutable")

    @classmethod
    def from_callable(cls, grid, fn):
        """Sample fn(t) (scalar or vector) at every grid point."""
        rows = [np.atleast_1d(np.asarray(fn(t), dtype=float)) for t in grid.points]
        return cls(grid, np.vstack(rows))

    @property
    def dim(self):
        return self.values.shape[1]

    def __add__(self, other):
        self._check_compatible(other)
        return GridFunction(self.grid, self.values + other.values)

    def __sub__(self, other):
        self._check_compatible(other)
        return GridFunction(self.grid, self.values - other.values)

    def __mul__(self, scalar):
        return GridFunction(self.grid, self.values * float(scalar))

    __rmul__ = __mul__

    def _check_compatible(self, other):
        if not isinstance(other, GridFunction):
            raise TypeError("expected a GridFunction")
        if other.grid is not self.grid and not self.grid.matches(other.grid):
            raise DomainError("grid functions live on different grids")
        if other.dim != self.dim:
            raise DimensionMismatchError("grid functions have different dimensions")

    def __repr__(self):
        return f"GridFunction(dim={self.dim}, {self.grid!r})"


def delta_derivative(f):
    """Forward difference over the graininess, on the k-truncated grid."""
    if f.grid.size < 2:
        raise DegenerateScaleError("delta derivative needs at least 2 grid points")
    mu = f.grid.mu[:-1]
    dv = np.diff(f.values, axis=0) / mu[:, None]
    return GridFunction(f.grid.truncated(), dv)


def sigma_shift(f):
    """f composed with the forward jump: on the grid, f_sigma(t_i) = f(t_{i+1})."""
    if f.grid.size < 2:
        raise DegenerateScaleError("sigma shift needs at least 2 grid points")
    return GridFunction(f.grid.truncated(), f.values[1:])


def delta_integral(f, c_index=0, d_index=None):
    """Integral over [t_c, t_d): sum of mu(t_i) * f(t_i) for c <= i < d.

    Returns one value per component.  d_index may go one past the last
    index; on a full grid the final graininess is 0 and contributes
    nothing, on a truncated grid it is the parent gap, so [a, b) integrals
    of k-functions keep their last term.
    """
    size = f.grid.size
    if d_index is None:
        d_index = size
    c_index = int(c_index)
    d_index = int(d_index)
    if not 0 <= c_index <= d_index <= size:
        raise DomainError(
            f"integration range [{c_index}, {d_index}) out of bounds for size {size}"
        )
    if c_index == d_index:
        return np.zeros(f.dim)
    mu = f.grid.mu[c_index:d_index]
    return mu @ f.values[c_index:d_index]


def c1rd_norm(f, norm="max"):
    """max over k-points of |f_sigma| plus max over k-points of |f_delta|.

    The vector norm on R^n is the max norm by default, or "euclid"."""
    if f.grid.size < 2:
        raise DegenerateScaleError("C1_rd norm needs at least 2 grid points")
    sig = f.values[1:]
    der = np.diff(f.values, axis=0) / f.grid.mu[:-1, None]
    if norm == "max":
        row = lambda a: np.max(np.abs(a), axis=1)
    elif norm == "euclid":
        row = lambda a: np.sqrt(np.sum(a * a, axis=1))
    else:
        raise DomainError(f"unknown vector norm {norm!r}")
    return float(np.max(row(sig)) + np.max(row(der)))
