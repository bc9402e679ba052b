"""Point-value recovery at cell interfaces from cell averages.

For degree ``p`` there are ``r = p + 1`` cells per stencil and ``r + 1``
shifted stencils touching interface ``k + 1/2``. Shift ``s`` uses cells
``k + 1 - r + s, ..., k + s``: shift 0 lies entirely left of the interface,
shift ``r`` entirely right of it.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

DEFAULT_ORDER = 4


def stencil_width(p):
    return p + 1


def n_candidates(p):
    return p + 2


def _solve_exact(matrix, rhs):
    """Gaussian elimination with partial pivoting over Fractions."""
    n = len(rhs)
    a = [list(row) + [b] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = max(range(col, n), key=lambda i: abs(a[i][col]))
        assert a[piv][col] != 0, "singular mean-value system"
        a[col], a[piv] = a[piv], a[col]
        for i in range(col + 1, n):
            factor = a[i][col] / a[col][col]
            for j in range(col, n + 1):
                a[i][j] -= factor * a[col][j]
    x = [Fraction(0)] * n
    for i in reversed(range(n)):
        acc = a[i][n] - sum(a[i][j] * x[j] for j in range(i + 1, n))
        x[i] = acc / a[i][i]
    return x


@lru_cache(maxsize=None)
def _exact_coefficients(p, shift):
    r = p + 1
    # unit cells, interface at x = 0; cell m spans [m - 1, m]
    cells = range(1 - r + shift, shift + 1)
    system = [
        [Fraction(m ** (q + 1) - (m - 1) ** (q + 1), q + 1) for m in cells]
        for q in range(r)
    ]
    rhs = [Fraction(1)] + [Fraction(0)] * p
    return tuple(_solve_exact(system, rhs))


def stencil_coefficients(p, shift):
    """Weights c_i with interface value = sum_i c_i * mean_i on stencil ``shift``.

    The weights reproduce the interface value of every polynomial of degree
    <= p from its cell means. They are grid independent on uniform meshes and
    computed in exact rational arithmetic.
    """
    if p < 0:
        raise ValueError("polynomial degree must be nonnegative")
    if not 0 <= shift <= p + 1:
        raise ValueError(f"shift must lie in 0..{p + 1}, got {shift}")
    return np.array([float(c) for c in _exact_coefficients(p, shift)])


@dataclass(frozen=True, eq=False)
class StencilOperator:
    order_p: int
    shift: int
    coefficients: np.ndarray

    @classmethod
    def build(cls, p, shift):
        return cls(p, shift, stencil_coefficients(p, shift))


@lru_cache(maxsize=None)
def recovery_matrix(p):
    """(K, 2r) matrix mapping the 2r-cell window around an interface to the
    K candidate values. Row ``s`` holds stencil ``s``'s weights at columns
    ``s .. s + r - 1``; column 0 is cell ``k + 1 - r``.
    """
    r = p + 1
    mat = np.zeros((r + 1, 2 * r))
    for s in range(r + 1):
        mat[s, s:s + r] = stencil_coefficients(p, s)
    mat.flags.writeable = False
    return mat


@dataclass(frozen=True, eq=False)
class RecoverySet:
    candidates: np.ndarray
    interface_index: int


def recover_interface_values(ext_means, p, k, offset=None):
    """Candidates at interface ``k + 1/2``.

    ``ext_means[i]`` holds cell ``i - offset``; ``offset`` defaults to the
    ghost width ``p + 1``.
    """
    r = p + 1
    offset = r if offset is None else offset
    ext_means = np.asarray(ext_means, dtype=float)
    lo = k + 1 - r + offset
    hi = k + r + offset
    if lo < 0 or hi >= ext_means.size:
        raise IndexError(
            f"interface {k} needs cells {k + 1 - r}..{k + r}, outside the data"
        )
    window = ext_means[lo:hi + 1]
    return RecoverySet(recovery_matrix(p) @ window, k)


def recover_all(ext_means, p):
    """Candidates at every interface a 2r-cell window fits into.

    Returns shape (len(ext_means) - 2r + 1, K); row ``j`` belongs to the
    interface between ``ext_means[j + r - 1]`` and ``ext_means[j + r]``.
    """
    r = p + 1
    windows = np.lib.stride_tricks.sliding_window_view(
        np.asarray(ext_means, dtype=float), 2 * r
    )
    return windows @ recovery_matrix(p).T
