"""Derivative-free minimisation helpers shared by the solvers and the oracle."""
from __future__ import annotations

import numpy as np
from scipy.optimize import OptimizeResult, minimize

NM_OPTIONS = dict(xatol=1e-11, fatol=1e-16, adaptive=True)


def nelder_mead(fun, x0, *, max_rounds: int = 8, maxiter: int | None = None, tol: float = 1e-16) -> OptimizeResult:
    """Nelder-Mead restarted from its own optimum until the value stops moving.

    A fresh simplex after each round undoes the collapse that stalls a single
    long run in more than a couple of dimensions.
    """
    x = np.atleast_1d(np.asarray(x0, dtype=float))
    if x.size == 0:
        return OptimizeResult(x=x, fun=float(fun(x)), nfev=1, success=True, nit=0)
    opts = dict(NM_OPTIONS, maxiter=maxiter or 4000 * x.size, maxfev=maxiter or 8000 * x.size)
    best = minimize(fun, x, method="Nelder-Mead", options=opts)
    nfev = best.nfev
    for _ in range(max_rounds - 1):
        res = minimize(fun, best.x, method="Nelder-Mead", options=opts)
        nfev += res.nfev
        improved = best.fun - res.fun
        if res.fun < best.fun:
            best = res
        if improved <= tol:
            break
    best.nfev = nfev
    return best


def multistart(fun, starts, **kw) -> tuple[OptimizeResult, list[OptimizeResult]]:
    """Screen every start with one coarse simplex run, then polish the best.

    The lowest screened value wins, earliest start on ties.  Returns the
    polished result and the screening runs.
    """
    coarse = dict(xatol=1e-7, fatol=1e-13, adaptive=True)
    runs = []
    for s in starts:
        x = np.atleast_1d(np.asarray(s, dtype=float))
        if x.size == 0:
            runs.append(OptimizeResult(x=x, fun=float(fun(x)), nfev=1, success=True, nit=0))
        else:
            runs.append(minimize(fun, x, method="Nelder-Mead", options=coarse))
    best = min(range(len(runs)), key=lambda i: (runs[i].fun, i))
    polished = nelder_mead(fun, runs[best].x, **kw)
    return (polished if polished.fun <= runs[best].fun else runs[best]), runs


def ordered_in_interval(x, lo: float, hi: float) -> np.ndarray:
    """Map ``R^p`` onto increasing p-tuples strictly inside ``(lo, hi)``.

    ``x`` are log-ratios of the p + 1 gaps to the last gap, so ``x = 0`` gives
    equal spacing.
    """
    x = np.asarray(x, dtype=float)
    z = np.append(x, 0.0)
    w = np.exp(z - z.max())
    return lo + (hi - lo) * np.cumsum(w)[:-1] / w.sum()


def interval_coordinates(points, lo: float, hi: float) -> np.ndarray:
    """Inverse of :func:`ordered_in_interval`."""
    pts = np.sort(np.asarray(points, dtype=float))
    gaps = np.diff(np.r_[lo, pts, hi])
    return np.log(gaps[:-1] / gaps[-1])


def central_gradient(fun, x, h: float = 1e-6) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    g = np.empty_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        g[i] = (fun(x + e) - fun(x - e)) / (2 * h)
    return g
