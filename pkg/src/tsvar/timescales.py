"""Bounded time scales and their structural operators.

A time scale here is a finite union of disjoint closed intervals; a
degenerate interval [p, p] is an isolated point.  This covers every
discrete, continuous, and hybrid case that fits in memory, and keeps
membership and the jump operators exactly decidable.
"""

from bisect import bisect_right
from dataclasses import dataclass
import math

import numpy as np

from .errors import DegenerateScaleError, DomainError, FileFormatError

#: default absolute tolerance when matching t values read from text
DEFAULT_TOL = 1e-12


@dataclass(frozen=True)
class PointClass:
    """Density classification of a point: right/left dense vs scattered."""

    right_dense: bool
    left_dense: bool

    @property
    def right_scattered(self):
        return not self.right_dense

    @property
    def left_scattered(self):
        return not self.left_dense

    def __str__(self):
        r = "right-dense" if self.right_dense else "right-scattered"
        l = "left-dense" if self.left_dense else "left-scattered"
        return f"({r}, {l})"


class TimeScale:
    """Immutable bounded time scale: sorted disjoint closed segments.

    Segments with l == r are isolated points.  A single-point scale is
    permitted only so that repeated k-truncation of discrete scales stays
    closed; sampling and problem construction require min < max.
    """

    __slots__ = ("segments", "tol", "_starts")

    def __init__(self, segments, tol=DEFAULT_TOL):
        segs = []
        for l, r in segments:
            l = float(l)
            r = float(r)
            if not (math.isfinite(l) and math.isfinite(r)):
                raise DomainError("segment endpoints must be finite")
            if r < l:
                raise DomainError(f"segment [{l}, {r}] has r < l")
            segs.append((l, r))
        if not segs:
            raise DomainError("time scale must be nonempty")
        segs.sort()
        for (l0, r0), (l1, r1) in zip(segs, segs[1:]):
            if l1 <= r0:
                raise DomainError(
                    f"segments [{l0}, {r0}] and [{l1}, {r1}] overlap or touch"
                )
        object.__setattr__(self, "segments", tuple(segs))
        object.__setattr__(self, "tol", float(tol))
        object.__setattr__(self, "_starts", [l for l, _ in segs])

    def __setattr__(self, name, value):
        raise AttributeError("TimeScale is immutable")

    @classmethod
    def from_points(cls, points, tol=DEFAULT_TOL):
        return cls([(p, p) for p in points], tol=tol)

    @classmethod
    def interval(cls, a, b, tol=DEFAULT_TOL):
        return cls([(a, b)], tol=tol)

    @property
    def a(self):
        """Minimum of the scale."""
        return self.segments[0][0]

    @property
    def b(self):
        """Maximum of the scale."""
        return self.segments[-1][1]

    @property
    def is_degenerate(self):
        return self.a == self.b

    @property
    def is_discrete(self):
        """True when every segment is an isolated point."""
        return all(l == r for l, r in self.segments)

    def _locate(self, t):
        """Return (segment index, t snapped to an endpoint within tol)."""
        t = float(t)
        j = bisect_right(self._starts, t + self.tol) - 1
        if j >= 0:
            l, r = self.segments[j]
            if abs(t - l) <= self.tol:
                return j, l
            if abs(t - r) <= self.tol:
                return j, r
            if l < t < r:
                return j, t
        if j + 1 < len(self.segments):
            l, r = self.segments[j + 1]
            if abs(t - l) <= self.tol:
                return j + 1, l
        raise DomainError(f"t={t} is not in the time scale")

    def __contains__(self, t):
        try:
            self._locate(t)
        except DomainError:
            return False
        return True

    def sigma(self, t):
        """Forward jump: inf of scale points above t; sigma(b) = b."""
        j, t = self._locate(t)
        l, r = self.segments[j]
        if t < r:
            return t
        if j + 1 < len(self.segments):
            return self.segments[j + 1][0]
        return t

    def rho(self, t):
        """Backward jump: sup of scale points below t; rho(a) = a."""
        j, t = self._locate(t)
        l, r = self.segments[j]
        if t > l:
            return t
        if j > 0:
            return self.segments[j - 1][1]
        return t

    def graininess(self, t):
        """mu(t) = sigma(t) - t."""
        j, t = self._locate(t)
        l, r = self.segments[j]
        if t < r:
            return 0.0
        if j + 1 < len(self.segments):
            return self.segments[j + 1][0] - t
        return 0.0

    def classify(self, t):
        j, t = self._locate(t)
        return PointClass(
            right_dense=self.sigma(t) == t,
            left_dense=self.rho(t) == t,
        )

    def truncate_k(self):
        """Remove the half-open tail (rho(b), b]; twice gives T^{k^2}."""
        if self.is_degenerate:
            raise DegenerateScaleError("cannot k-truncate a single-point scale")
        l, r = self.segments[-1]
        if l < r:
            # b is left-dense, nothing to remove
            return self
        return TimeScale(self.segments[:-1], tol=self.tol)

    def sample(self, resolution):
        """Discretize into a GridTimeScale.

        Isolated points and segment endpoints pass through exactly; each
        segment with r > l is split into ceil((r-l)/resolution) equal steps.
        """
        resolution = float(resolution)
        if resolution <= 0:
            raise DomainError("resolution must be positive")
        if self.is_degenerate:
            raise DegenerateScaleError("cannot sample a single-point scale")
        pts = []
        dense = []
        for l, r in self.segments:
            if r == l:
                pts.append(l)
                dense.append(False)
            else:
                steps = max(1, math.ceil((r - l) / resolution))
                seg = np.linspace(l, r, steps + 1)
                pts.extend(seg.tolist())
                dense.extend([True] * (steps + 1))
        # collapse near-duplicates to the lower value (defensive; segments
        # are disjoint so this only guards float coincidences)
        keep_pts = [pts[0]]
        keep_dense = [dense[0]]
        for p, fl in zip(pts[1:], dense[1:]):
            if p - keep_pts[-1] <= DEFAULT_TOL:
                continue
            keep_pts.append(p)
            keep_dense.append(fl)
        return GridTimeScale(keep_pts, keep_dense)

    def format(self):
        """Inverse of parse_literal."""
        items = []
        for l, r in self.segments:
            if l == r:
                items.append(_fmt_num(l))
            else:
                items.append(f"[{_fmt_num(l)},{_fmt_num(r)}]")
        return ";".join(items)

    def __eq__(self, other):
        return isinstance(other, TimeScale) and self.segments == other.segments

    def __hash__(self):
        return hash(self.segments)

    def __repr__(self):
        return f"TimeScale({self.format()!r})"


def _fmt_num(x):
    return str(int(x)) if float(x).is_integer() and abs(x) < 1e15 else repr(x)


def parse_literal(text, tol=DEFAULT_TOL):
    """Parse the time-scale literal syntax: semicolon-separated items, each
    a point ``p`` or an interval ``[l,r]``, e.g. ``[0,1];2`` or ``0;1;2``."""
    segments = []
    for raw in text.split(";"):
        item = raw.strip()
        if not item:
            raise FileFormatError(f"empty item in time-scale literal {text!r}")
        if item.startswith("["):
            if not item.endswith("]"):
                raise FileFormatError(f"unterminated interval {item!r}")
            body = item[1:-1].split(",")
            if len(body) != 2:
                raise FileFormatError(f"interval {item!r} needs exactly two endpoints")
            l, r = (_parse_num(s, item) for s in body)
            segments.append((l, r))
        else:
            p = _parse_num(item, item)
            segments.append((p, p))
    return TimeScale(segments, tol=tol)


def _parse_num(s, context):
    try:
        return float(s)
    except ValueError:
        raise FileFormatError(f"bad number {s.strip()!r} in {context!r}") from None


class GridTimeScale:
    """Finite strictly increasing sample grid with per-point graininess.

    ``mu[i] = points[i+1] - points[i]`` for i < last; the final point's
    graininess defaults to 0 (sigma(b) = b).  A truncated grid keeps the
    parent gap as its final graininess so that integrals of k-functions
    over [a, b) keep their last term.
    """

    __slots__ = ("points", "dense_flags", "mu", "_hash")

    def __init__(self, points, dense_flags=None, last_mu=0.0):
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 1 or pts.size < 1:
            raise DegenerateScaleError("grid needs at least 1 point")
        if not np.all(np.isfinite(pts)):
            raise DomainError("grid points must be finite")
        gaps = np.diff(pts)
        if np.any(gaps <= 0):
            raise DomainError("grid points must be strictly increasing")
        if dense_flags is None:
            flags = np.zeros(pts.size, dtype=bool)
        else:
            flags = np.asarray(dense_flags, dtype=bool)
            if flags.shape != pts.shape:
                raise DomainError("dense_flags length must match points")
        mu = np.concatenate([gaps, [float(last_mu)]])
        for arr in (pts, flags, mu):
            arr.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "dense_flags", flags)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("GridTimeScale is immutable")

    @property
    def size(self):
        return self.points.size

    @property
    def a(self):
        return float(self.points[0])

    @property
    def b(self):
        return float(self.points[-1])

    @property
    def is_discrete(self):
        return not bool(self.dense_flags.any())

    def truncated(self):
        """Drop the final point (the k-operation), keeping its gap as the
        new final graininess."""
        if self.size < 2:
            raise DegenerateScaleError("cannot truncate a single-point grid")
        return GridTimeScale(
            self.points[:-1], self.dense_flags[:-1], last_mu=self.mu[-2]
        )

    def index_of(self, t, tol=DEFAULT_TOL):
        i = int(np.searchsorted(self.points, t))
        for j in (i - 1, i, i + 1):
            if 0 <= j < self.size and abs(self.points[j] - t) <= tol:
                return j
        raise DomainError(f"t={t} is not a grid point")

    def matches(self, other, tol=DEFAULT_TOL):
        return self.size == other.size and bool(
            np.all(np.abs(self.points - other.points) <= tol)
        )

    def __eq__(self, other):
        return (
            isinstance(other, GridTimeScale)
            and np.array_equal(self.points, other.points)
            and np.array_equal(self.mu, other.mu)
        )

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(
                self, "_hash", hash((self.points.tobytes(), self.mu.tobytes()))
            )
        return self._hash

    def __repr__(self):
        return f"GridTimeScale({self.size} points on [{self.a}, {self.b}])"
