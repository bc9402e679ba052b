"""Numerical fluxes built from the entropy rate criterion, plus baselines.

The Dafermos flux picks, among admissible states u in U, the one whose flux
dissipates total entropy fastest: argmin_u (W(u_r) - W(u_l)) * f(u).
"""

import numpy as np

from .law import BURGERS

EPS_JUMP = 1e-12

FLUX_KINDS = ("mlf", "dafermos", "godunov", "llf")


def dafermos_state_burgers(lo, hi, u_l, u_r):
    """Optimal state u* in [lo, hi] for Burgers with quadratic entropy.

    Vectorized; ``u_l == u_r`` returns the interval midpoint.
    """
    lo, hi, u_l, u_r = np.broadcast_arrays(*map(np.asarray, (lo, hi, u_l, u_r)))
    # minimizing f: the sonic point if admissible, else the endpoint nearest it
    u_min = np.clip(0.0, lo, hi)
    # maximizing f: the endpoint of largest magnitude
    u_max = np.where(np.abs(hi) >= np.abs(lo), hi, lo)
    mid = 0.5 * (lo + hi)
    return np.where(u_l < u_r, u_min, np.where(u_l > u_r, u_max, mid))


def dafermos_flux_burgers(adm, u_l, u_r):
    """Closed-form Dafermos flux for Burgers' equation on ``adm``."""
    if u_l == u_r:
        return float(BURGERS.flux(adm.center))
    lo, hi = adm.bounds
    return float(BURGERS.flux(dafermos_state_burgers(lo, hi, u_l, u_r)))


def dafermos_flux_search(law, adm, u_l, u_r, n_samples=201):
    """Brute-force Dafermos flux by sampling the admissible interval.

    Samples ``n_samples`` uniform points (endpoints included) plus the
    center and returns f at the first minimizer of (W(u_r) - W(u_l)) f(u).
    """
    if n_samples < 2:
        raise ValueError("n_samples must be at least 2")
    lo, hi = adm.bounds
    pts = np.concatenate([np.linspace(lo, hi, n_samples), [adm.center]])
    jump = law.entropy_vars(u_r) - law.entropy_vars(u_l)
    fvals = law.flux(pts)
    return float(fvals[np.argmin(jump * fvals)])


def mlf_flux(law, adm, u_l, u_r, eps_jump=EPS_JUMP):
    """Modified Lax-Friedrichs flux on the admissible interval ``adm``.

    f(u_c) plus a correction of size max|f'| * radius pointing along
    W(u_l) - W(u_r); the correction is dropped when that jump is below
    ``eps_jump``.
    """
    if not eps_jump > 0:
        raise ValueError("eps_jump must be positive")
    lo, hi = adm.bounds
    return float(mlf_rows(law, adm.center, adm.radius, lo, hi, u_l, u_r, eps_jump))


def mlf_rows(law, center, radius, lo, hi, u_l, u_r, eps_jump=EPS_JUMP):
    jump = law.entropy_vars(u_l) - law.entropy_vars(u_r)
    speed = law.max_wave_speed(lo, hi)
    corr = np.where(np.abs(jump) >= eps_jump, np.sign(jump) * speed * radius, 0.0)
    return law.flux(center) + corr


def godunov_flux(law, u_l, u_r):
    """Godunov flux: min of f on [u_l, u_r] if u_l <= u_r, else max on [u_r, u_l].

    Uses the sonic-point structure of convex fluxes with f'(0) = 0, i.e.
    Burgers; vectorized.
    """
    u_l, u_r = np.broadcast_arrays(np.asarray(u_l, float), np.asarray(u_r, float))
    fl, fr = law.flux(u_l), law.flux(u_r)
    rising = np.minimum(np.minimum(fl, fr), np.where(
        (u_l <= 0.0) & (0.0 <= u_r), law.flux(np.zeros_like(u_l)), np.inf))
    falling = np.maximum(fl, fr)
    out = np.where(u_l <= u_r, rising, falling)
    return out if out.ndim else float(out)


def llf_flux(law, u_l, u_r):
    """Local Lax-Friedrichs (Rusanov) flux; vectorized."""
    u_l, u_r = np.broadcast_arrays(np.asarray(u_l, float), np.asarray(u_r, float))
    c_b = law.max_wave_speed(np.minimum(u_l, u_r), np.maximum(u_l, u_r))
    out = 0.5 * (law.flux(u_l) + law.flux(u_r)) + 0.5 * c_b * (u_l - u_r)
    return out if out.ndim else float(out)


def dissipation_rate(flux, w_l, w_r):
    """Contribution (w_r - w_l) * flux of one interface to dE/dt."""
    return (w_r - w_l) * flux
