"""Burgers test problems u1 (shock formation), u2 (rarefaction), u3 (smooth)."""

from dataclasses import dataclass, field

import numpy as np

from .exact import backtrack_value, exact_cell_means, riemann_rarefaction_burgers, shock_time
from .grid import BoundaryCondition, DEFAULT_QUAD_NODES, Grid1D
from .law import BURGERS


@dataclass(frozen=True)
class Problem:
    name: str
    x_left: float
    x_right: float
    bc: BoundaryCondition
    u0: object
    du0: object = None
    kinks0: tuple = ()
    breaking_time: float = np.inf
    default_t_end: float = 1.0
    default_snapshots: tuple = field(default=())

    def grid(self, n_cells):
        return Grid1D(self.x_left, self.x_right, n_cells)

    def initial_field(self, n_cells, quad_nodes=DEFAULT_QUAD_NODES):
        return exact_cell_means(self.u0, self.grid(n_cells), quad_nodes, self.kinks0)

    def exact(self, x, t):
        """Exact solution at time ``t``; smooth problems only before breaking."""
        if self.name == "u2":
            if t == 0:
                return self.u0(x)
            return riemann_rarefaction_burgers(-1.0, 1.0, x, t, 1.0)
        return backtrack_value(self.u0, self.du0, x, t, BURGERS,
                               t_shock=self.breaking_time)

    def exact_field(self, n_cells, t, quad_nodes=DEFAULT_QUAD_NODES):
        kinks = (1.0 - t, 1.0 + t) if self.name == "u2" and t > 0 else self.kinks0
        return exact_cell_means(lambda x: self.exact(x, t), self.grid(n_cells),
                                quad_nodes, kinks)


def _u1(x):
    return np.sin(np.pi * x)


def _du1(x):
    return np.pi * np.cos(np.pi * x)


def _u2(x):
    return np.where(np.asarray(x) < 1.0, -1.0, 1.0)


def _u3(x):
    return 1.0 + np.sin(np.pi * x) / 50.0


def _du3(x):
    return np.pi * np.cos(np.pi * x) / 50.0


PROBLEMS = {
    "u1": Problem("u1", 0.0, 2.0, BoundaryCondition.PERIODIC, _u1, _du1,
                  breaking_time=shock_time(-np.pi), default_t_end=1.2,
                  default_snapshots=(0.3, 0.6, 1.2)),
    "u2": Problem("u2", 0.5, 1.5, BoundaryCondition.OUTFLOW, _u2, kinks0=(1.0,),
                  default_t_end=0.2, default_snapshots=(0.2,)),
    "u3": Problem("u3", 0.0, 2.0, BoundaryCondition.PERIODIC, _u3, _du3,
                  breaking_time=shock_time(-np.pi / 50), default_t_end=1.0,
                  default_snapshots=(1.0,)),
}


def get_problem(name):
    try:
        return PROBLEMS[name]
    except KeyError:
        raise ValueError(f"unknown problem {name!r}; choose from {sorted(PROBLEMS)}") from None
