"""Uniform 1D meshes, cell-average fields and global diagnostics."""

import csv
import enum
from dataclasses import dataclass, field

import numpy as np

DEFAULT_QUAD_NODES = 10


class BoundaryCondition(str, enum.Enum):
    PERIODIC = "periodic"
    OUTFLOW = "outflow"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(
                f"unknown boundary condition {value!r}; use 'periodic' or 'outflow'"
            ) from None


@dataclass(frozen=True)
class Grid1D:
    x_left: float
    x_right: float
    n_cells: int

    def __post_init__(self):
        if int(self.n_cells) != self.n_cells or self.n_cells < 1:
            raise ValueError(f"n_cells must be a positive integer, got {self.n_cells}")
        if not self.x_right > self.x_left:
            raise ValueError("x_right must exceed x_left")

    @property
    def dx(self):
        return (self.x_right - self.x_left) / self.n_cells

    @property
    def edges(self):
        return self.x_left + self.dx * np.arange(self.n_cells + 1)

    @property
    def centers(self):
        return self.x_left + self.dx * (np.arange(self.n_cells) + 0.5)


@dataclass(frozen=True, eq=False)
class CellField:
    """Cell averages on a grid. ``means`` is copied and made read-only."""

    grid: Grid1D
    means: np.ndarray = field(repr=False)

    def __post_init__(self):
        means = np.array(self.means, dtype=float)
        if means.shape != (self.grid.n_cells,):
            raise ValueError(
                f"expected {self.grid.n_cells} means, got shape {means.shape}"
            )
        if not np.all(np.isfinite(means)):
            raise ValueError("cell means must be finite")
        means.flags.writeable = False
        object.__setattr__(self, "means", means)

    def with_means(self, means):
        return CellField(self.grid, means)

    def conserved_sum(self):
        return float(np.sum(self.means) * self.grid.dx)


def gauss_legendre_cell_means(func, edges, quad_nodes=DEFAULT_QUAD_NODES):
    """Average of ``func`` over each [edges[i], edges[i+1]] by Gauss-Legendre.

    ``func`` must accept a numpy array of abscissae.
    """
    if quad_nodes < 1:
        raise ValueError("quad_nodes must be positive")
    nodes, weights = np.polynomial.legendre.leggauss(quad_nodes)
    edges = np.asarray(edges, dtype=float)
    a, b = edges[:-1], edges[1:]
    half = 0.5 * (b - a)
    x = 0.5 * (a + b)[:, None] + half[:, None] * nodes[None, :]
    vals = np.asarray(func(x), dtype=float)
    vals = np.broadcast_to(vals, x.shape)
    # weights sum to 2 on the reference cell
    return 0.5 * vals @ weights


def project_initial_condition(u0, grid, quad_nodes=DEFAULT_QUAD_NODES):
    """Exact-to-quadrature cell averages of ``u0`` on ``grid``."""
    if quad_nodes < 5:
        raise ValueError("quad_nodes must be at least 5")
    return CellField(grid, gauss_legendre_cell_means(u0, grid.edges, quad_nodes))


def ghost_extend(field, bc, width):
    """Pad the means with ``width`` ghost cells on each side.

    Periodic wraps cyclically; outflow copies the nearest interior mean.
    """
    bc = BoundaryCondition.parse(bc)
    means = field.means if isinstance(field, CellField) else np.asarray(field, float)
    n = means.shape[0]
    if width < 1:
        raise ValueError("ghost width must be at least 1")
    if bc is BoundaryCondition.PERIODIC:
        if width > n:
            raise ValueError(f"periodic ghost width {width} exceeds {n} cells")
        return np.concatenate([means[n - width:], means, means[:width]])
    return np.pad(means, width, mode="edge")


def total_entropy(field, law):
    """sum_k U(u_k) dx."""
    return float(np.sum(law.entropy(field.means)) * field.grid.dx)


def total_variation(field, bc=BoundaryCondition.OUTFLOW):
    """sum_k |u_{k+1} - u_k|, closed cyclically for periodic data."""
    means = field.means if isinstance(field, CellField) else np.asarray(field, float)
    tv = float(np.sum(np.abs(np.diff(means))))
    if BoundaryCondition.parse(bc) is BoundaryCondition.PERIODIC and means.size > 1:
        tv += abs(means[0] - means[-1])
    return tv


def write_field_csv(path, field):
    """Write ``x,u`` rows at cell centers with 17 significant digits."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "u"])
        for x, u in zip(field.grid.centers, field.means):
            writer.writerow([f"{x:.17g}", f"{u:.17g}"])


def read_field_csv(path):
    """Read a field written by :func:`write_field_csv`.

    The grid is rebuilt from the (uniform) cell centers.
    """
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    x, u = data[:, 0], data[:, 1]
    if x.size < 2:
        raise ValueError("need at least two cells to recover the grid")
    dx = (x[-1] - x[0]) / (x.size - 1)
    grid = Grid1D(x[0] - 0.5 * dx, x[-1] + 0.5 * dx, x.size)
    return CellField(grid, u)
