"""Reference solutions and error norms."""

import numpy as np

from .grid import CellField, DEFAULT_QUAD_NODES, gauss_legendre_cell_means
from .law import BURGERS


class BacktrackError(RuntimeError):
    """Characteristic backtracking failed, typically past the shock time."""


def shock_time(du0_min):
    """Breaking time 1 / max(-u0') for Burgers; ``inf`` if u0 never decreases."""
    return np.inf if du0_min >= 0 else -1.0 / du0_min


def backtrack_value(u0, du0, x, t, law=BURGERS, tol=1e-14, max_iter=100, t_shock=None):
    """Solve u = u0(x - f'(u) t) for smooth data before the shock time.

    Newton on g(u) = u - u0(x - f'(u) t) from the start value u0(x), with a
    bisection fallback on a bracket around the current iterate when Newton
    stalls. Vectorized over ``x``. Past ``t_shock`` the characteristics
    cross and the call is refused.
    """
    if t_shock is not None and t >= t_shock:
        raise BacktrackError(f"t={t} is past the shock time {t_shock:.6g}")
    x = np.asarray(x, dtype=float)
    if t == 0:
        return np.asarray(u0(x), dtype=float)
    u = np.array(u0(x), dtype=float)
    res = lambda v: v - u0(x - law.wave_speed(v) * t)
    for _ in range(max_iter):
        g = res(u)
        if np.all(np.abs(g) < tol):
            return u
        dg = 1.0 + du0(x - law.wave_speed(u) * t) * law.wave_speed_prime(u) * t
        if np.any(dg <= 0):
            break
        u = u - g / dg
    g = res(u)
    if np.all(np.abs(g) < 10 * tol):
        return u
    return _bisect(res, u, tol)


def _bisect(res, guess, tol, max_iter=200):
    step = np.maximum(np.abs(guess), 1.0) * 1e-3
    lo, hi = guess - step, guess + step
    for _ in range(60):
        glo, ghi = res(lo), res(hi)
        bad = np.sign(glo) == np.sign(ghi)
        if not np.any(bad):
            break
        step = np.where(bad, 2 * step, step)
        lo, hi = np.where(bad, guess - step, lo), np.where(bad, guess + step, hi)
    else:
        raise BacktrackError("no sign change for bisection; past the shock time?")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        gm = res(mid)
        if np.all((np.abs(gm) < tol) | (hi - lo <= 4e-16 * np.abs(mid))):
            return mid
        same = np.sign(gm) == np.sign(glo)
        lo, glo = np.where(same, mid, lo), np.where(same, gm, glo)
        hi = np.where(same, hi, mid)
    raise BacktrackError("bisection did not converge")


def riemann_rarefaction_burgers(u_l, u_r, x, t, x0):
    """Exact fan for Burgers with u_l < u_r centered at ``x0``."""
    if not u_l < u_r:
        raise ValueError("rarefaction needs u_l < u_r")
    if not t > 0:
        raise ValueError("t must be positive")
    xi = (np.asarray(x, dtype=float) - x0) / t
    out = np.clip(xi, u_l, u_r)
    return out if out.ndim else float(out)


def exact_cell_means(exact, grid, quad_nodes=DEFAULT_QUAD_NODES, kinks=()):
    """Cell averages of ``exact``; cells containing a kink are split there."""
    edges = grid.edges
    means = gauss_legendre_cell_means(exact, edges, quad_nodes)
    for xk in kinks:
        k = int(np.searchsorted(edges, xk, side="right")) - 1
        if 0 <= k < grid.n_cells and edges[k] < xk < edges[k + 1]:
            parts = gauss_legendre_cell_means(exact, [edges[k], xk, edges[k + 1]], quad_nodes)
            w = np.array([xk - edges[k], edges[k + 1] - xk]) / grid.dx
            means[k] = parts @ w
    return CellField(grid, means)


def field_error(numeric, reference, norm="L1"):
    if numeric.grid != reference.grid:
        raise ValueError("fields live on different grids")
    diff = np.abs(numeric.means - reference.means)
    norm = norm.upper()
    if norm == "L1":
        return float(np.sum(diff) * numeric.grid.dx)
    if norm in ("LINF", "L∞"):
        return float(np.max(diff))
    raise ValueError(f"unknown norm {norm!r}; use L1 or Linf")
