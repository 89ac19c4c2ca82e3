"""Vectorized bracketing solvers for monotone functions."""
from __future__ import annotations

import numpy as np

from .errors import ConsistencyError


def bisect_increasing(func, lo, hi, targets, *, xtol: float = 0.0, max_iter: int = 200):
    """Solve ``func(x) = targets`` elementwise on brackets [lo, hi] by bisection.

    ``func(x, idx)`` maps an array of abscissae (belonging to the elements
    ``idx`` of ``targets``) to values and must be increasing on each
    bracket.  The endpoints are never evaluated, so the brackets may be
    closed at points where ``func`` is singular.  With ``xtol = 0`` iteration
    runs until the bracket collapses to adjacent floating point numbers.
    """
    targets = np.asarray(targets, dtype=float)
    lo = np.broadcast_to(np.asarray(lo, dtype=float), targets.shape).copy()
    hi = np.broadcast_to(np.asarray(hi, dtype=float), targets.shape).copy()
    if np.any(hi < lo):
        raise ConsistencyError("inverted bisection bracket")
    active = np.ones(targets.shape, dtype=bool)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        done = (hi - lo <= xtol) | (mid <= lo) | (mid >= hi)
        active &= ~done
        if not active.any():
            break
        idx = np.nonzero(active)
        vals = func(mid[idx], idx)
        up = vals < targets[idx]
        lo[idx] = np.where(up, mid[idx], lo[idx])
        hi[idx] = np.where(up, hi[idx], mid[idx])
    return 0.5 * (lo + hi)


def solve_increasing(func, lo, hi, flo, fhi, targets, *, ftol: float = 0.0, max_iter: int = 200):
    """Bracketed Illinois iteration for ``func(x) = targets``, elementwise.

    Same contract as ``bisect_increasing`` except that the function values
    at the bracket ends are supplied (they may be limits at singular
    endpoints).  Each step is a regula falsi step with the Illinois
    down-weighting; a bisection step is forced whenever the bracket failed to
    halve, so the worst case is twice the bisection count.  Stops when
    |func(x) - target| <= ftol or the bracket collapses.
    """
    t = np.asarray(targets, dtype=float)
    shape = t.shape
    lo = np.broadcast_to(np.asarray(lo, dtype=float), shape).copy()
    hi = np.broadcast_to(np.asarray(hi, dtype=float), shape).copy()
    glo = np.broadcast_to(np.asarray(flo, dtype=float), shape) - t
    ghi = np.broadcast_to(np.asarray(fhi, dtype=float), shape) - t
    if np.any(hi < lo) or np.any(glo > 0) or np.any(ghi < 0):
        raise ConsistencyError("bracket does not enclose the target")
    best = 0.5 * (lo + hi)
    side = np.zeros(shape, dtype=int)
    force_bisect = np.zeros(shape, dtype=bool)
    active = np.ones(shape, dtype=bool)
    for _ in range(max_iter):
        if not active.any():
            break
        idx = np.nonzero(active)
        a, b, ga, gb = lo[idx], hi[idx], glo[idx], ghi[idx]
        with np.errstate(divide="ignore", invalid="ignore"):
            x = (a * gb - b * ga) / (gb - ga)
        mid = 0.5 * (a + b)
        bad = ~np.isfinite(x) | (x <= a) | (x >= b) | force_bisect[idx]
        x = np.where(bad, mid, x)
        collapsed = (x <= a) | (x >= b)
        gx = func(x, idx) - t[idx]
        best[idx] = x
        width_before = b - a
        up = gx < 0
        new_lo = np.where(up, x, a)
        new_hi = np.where(up, b, x)
        new_glo = np.where(up, gx, ga)
        new_ghi = np.where(up, gb, gx)
        s = np.where(up, 1, -1)
        same = side[idx] == s
        # Illinois: halve the stale end when the same side is retained twice
        new_ghi = np.where(same & up, 0.5 * new_ghi, new_ghi)
        new_glo = np.where(same & ~up, 0.5 * new_glo, new_glo)
        lo[idx], hi[idx], glo[idx], ghi[idx] = new_lo, new_hi, new_glo, new_ghi
        side[idx] = s
        force_bisect[idx] = (new_hi - new_lo) > 0.5 * width_before
        finished = collapsed | (np.abs(gx) <= ftol) | (gx == 0)
        active[idx] = ~finished
    return best
