"""Shared deterministic generators for the test suite."""

import numpy as np

import tsvar.expressions as ex
from tsvar import GridFunction, GridTimeScale, TimeScale


def random_timescale(rng, max_segments=4):
    """Random bounded scale mixing isolated points and intervals."""
    nseg = int(rng.integers(1, max_segments + 1))
    pos = float(rng.uniform(-1.0, 1.0))
    segs = []
    for _ in range(nseg):
        pos += float(rng.uniform(0.2, 1.0))
        if rng.random() < 0.5:
            segs.append((pos, pos))
        else:
            end = pos + float(rng.uniform(0.3, 1.2))
            segs.append((pos, end))
            pos = end
    if len(segs) == 1 and segs[0][0] == segs[0][1]:
        p = segs[0][0]
        segs.append((p + 1.0, p + 1.0))
    return TimeScale(segs)


def random_grid(rng, min_points=3, max_points=12):
    """Strictly increasing grid with varied gaps."""
    m = int(rng.integers(min_points, max_points + 1))
    gaps = rng.uniform(0.2, 1.5, size=m - 1)
    pts = np.concatenate([[float(rng.uniform(-1, 1))], np.cumsum(gaps)])
    pts[1:] += pts[0]
    return GridTimeScale(pts)


def random_gridfunction(rng, grid, n=1, scale=3.0):
    return GridFunction(grid, rng.uniform(-scale, scale, size=(grid.size, n)))


def sample_points(ts, rng, count=6):
    """Query points inside a time scale: endpoints and segment interiors."""
    pts = []
    for l, r in ts.segments:
        pts.append(l)
        pts.append(r)
        if r > l:
            pts.extend(rng.uniform(l, r, size=2).tolist())
    rng.shuffle(pts)
    return pts[: max(count, 2)]


def random_smooth_expr(rng, n, depth=2):
    """Bounded generator over +,-,*,^int,neg,sin,cos,scaled exp: safe for
    finite-difference oracles at any real point."""
    if depth == 0 or rng.random() < 0.3:
        c = rng.random()
        if c < 0.3:
            return ex.Num(round(float(rng.uniform(-2, 2)), 3))
        kind = ["t", "y", "v"][int(rng.integers(0, 3))]
        return ex.Var(kind, int(rng.integers(0, n)) if kind != "t" else 0)
    op = int(rng.integers(0, 7))
    a = random_smooth_expr(rng, n, depth - 1)
    if op == 0:
        return ex.Neg(a)
    if op == 1:
        return ex.Call("sin", a)
    if op == 2:
        return ex.Call("cos", a)
    if op == 3:
        return ex.Call("exp", ex.mul(ex.Num(0.25), a))
    b = random_smooth_expr(rng, n, depth - 1)
    if op == 4:
        return ex.Add(a, b)
    if op == 5:
        return ex.Sub(a, b)
    if op == 6 and rng.random() < 0.25:
        return ex.Pow(a, ex.Num(float(rng.integers(2, 4))))
    return ex.Mul(a, b)


def dr_witness(g_values):
    """For non-constant g on a discrete grid, an endpoint-vanishing eta with
    a nonzero integral of g . eta^Delta: a unit bump at the interior point
    after the largest jump of g."""
    diffs = np.abs(np.diff(g_values, axis=0))
    j, k = np.unravel_index(np.argmax(diffs), diffs.shape)
    eta = np.zeros((g_values.shape[0] + 1, g_values.shape[1]))
    eta[j + 1, k] = 1.0
    return eta
