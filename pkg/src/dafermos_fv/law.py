"""Scalar conservation laws u_t + f(u)_x = 0 with a convex entropy.

All maps accept scalars or numpy arrays and broadcast elementwise.
"""

import numpy as np


class ScalarLaw:
    """Base class for a scalar law paired with a convex entropy.

    Subclasses provide ``flux``, ``wave_speed``, ``entropy`` and
    ``entropy_vars``. ``wave_speed_prime`` (f'') is needed only by the
    characteristic backtracking in :mod:`dafermos_fv.exact`.
    """

    name = "scalar"

    def flux(self, u):
        raise NotImplementedError

    def wave_speed(self, u):
        raise NotImplementedError

    def wave_speed_prime(self, u):
        raise NotImplementedError

    def entropy(self, u):
        raise NotImplementedError

    def entropy_vars(self, u):
        raise NotImplementedError

    def max_wave_speed(self, lo, hi, n_scan=64):
        """max |f'(u)| over [lo, hi], by scanning the interval.

        Generic fallback; laws with a known structure should override it.
        """
        lo = np.asarray(lo, dtype=float)
        hi = np.asarray(hi, dtype=float)
        _check_ordered(lo, hi)
        s = np.linspace(0.0, 1.0, n_scan)
        pts = lo[..., None] + (hi - lo)[..., None] * s
        return np.max(np.abs(self.wave_speed(pts)), axis=-1)

    def __repr__(self):
        return f"{type(self).__name__}()"


class Burgers(ScalarLaw):
    """Inviscid Burgers' equation, f(u) = u^2/2, with entropy U(u) = u^2/2."""

    name = "burgers"

    def flux(self, u):
        return 0.5 * np.square(u)

    def wave_speed(self, u):
        return np.asarray(u, dtype=float) * 1.0

    def wave_speed_prime(self, u):
        return np.ones_like(np.asarray(u, dtype=float))

    def entropy(self, u):
        return 0.5 * np.square(u)

    def entropy_vars(self, u):
        return np.asarray(u, dtype=float) * 1.0

    def max_wave_speed(self, lo, hi):
        # |f'| = |u| is convex, so the maximum sits at an endpoint
        lo = np.asarray(lo, dtype=float)
        hi = np.asarray(hi, dtype=float)
        _check_ordered(lo, hi)
        return np.maximum(np.abs(lo), np.abs(hi))


def _check_ordered(lo, hi):
    if np.any(lo > hi):
        raise ValueError("max_wave_speed needs lo <= hi")


BURGERS = Burgers()

LAWS = {"burgers": BURGERS}


def get_law(name):
    try:
        return LAWS[name]
    except KeyError:
        raise ValueError(f"unknown law {name!r}; known: {sorted(LAWS)}") from None
