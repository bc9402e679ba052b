"""Semi-discrete scheme assembly and fixed-step DP8 time integration."""

import logging
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _dop853
from .flux import FLUX_KINDS, dafermos_state_burgers, godunov_flux, llf_flux, mlf_rows
from .grid import BoundaryCondition, CellField, ghost_extend, total_entropy
from .law import BURGERS, Burgers, ScalarLaw
from .radius import PredictorKind
from .recon import DEFAULT_ORDER, recover_all
from .visc import DEFAULT_VISC_WIDTH, assemble_flux, build_profile, hann_kernel, redistribute

log = logging.getLogger(__name__)

SPEED_FLOOR = 1e-12


class SchemeFailure(RuntimeError):
    """The discrete state stopped being finite."""


@dataclass(frozen=True)
class SchemeConfig:
    law: ScalarLaw = BURGERS
    p: int = DEFAULT_ORDER
    predictor: PredictorKind = PredictorKind("bsphere")
    flux_kind: str = "mlf"
    redistribute: bool = True
    cfl: float = 0.1
    bc: BoundaryCondition = BoundaryCondition.PERIODIC
    visc_width: int = DEFAULT_VISC_WIDTH

    def __post_init__(self):
        object.__setattr__(self, "predictor", PredictorKind.parse(self.predictor))
        object.__setattr__(self, "bc", BoundaryCondition.parse(self.bc))
        if self.flux_kind not in FLUX_KINDS:
            raise ValueError(
                f"unknown flux {self.flux_kind!r}; choose from {', '.join(FLUX_KINDS)}"
            )
        if not self.cfl > 0:
            raise ValueError("cfl must be positive")
        if self.p < 0:
            raise ValueError("polynomial order must be nonnegative")
        self.predictor.validate(self.p + 2)
        if self.redistribute:
            hann_kernel(self.visc_width)

    @property
    def ghost_width(self):
        return self.p + 1

    @property
    def first_order(self):
        return self.flux_kind in ("godunov", "llf")


@lru_cache(maxsize=16)
def _kernel(width):
    return hann_kernel(width)


def interface_fluxes(means, config):
    """Fluxes at the n + 1 interfaces x_{-1/2}, ..., x_{n-1/2}."""
    law = config.law
    r = config.ghost_width
    n = means.size
    if n < 2 * r:
        raise ValueError(f"need at least {2 * r} cells for order {config.p}, got {n}")
    ext = ghost_extend(means, config.bc, r)
    left = ext[r - 1:r + n]
    right = ext[r:r + n + 1]

    if config.flux_kind == "godunov":
        return godunov_flux(law, left, right)
    if config.flux_kind == "llf":
        return llf_flux(law, left, right)

    center, radius = config.predictor(recover_all(ext, config.p))
    lo, hi = center - radius, center + radius

    if config.flux_kind == "dafermos":
        if not isinstance(law, Burgers):
            raise NotImplementedError("closed-form Dafermos flux is Burgers-only")
        state = dafermos_state_burgers(lo, hi, left, right)
        state = np.where(left == right, center, state)
        return law.flux(state)

    if not config.redistribute:
        return mlf_rows(law, center, radius, lo, hi, left, right)

    kernel = _kernel(config.visc_width)
    periodic = config.bc is BoundaryCondition.PERIODIC
    # periodic: interface -1 duplicates interface n-1
    sl = slice(1, None) if periodic else slice(None)
    profile = build_profile(center[sl], radius[sl], left[sl], right[sl], law)
    mu = redistribute(profile, kernel, config.bc)
    flux = assemble_flux(law.flux(center[sl]), mu, left[sl], right[sl], law)
    if periodic:
        flux = np.concatenate([flux[-1:], flux])
    return flux


def rhs_means(means, config, dx):
    flux = interface_fluxes(means, config)
    out = (flux[:-1] - flux[1:]) / dx
    if not np.all(np.isfinite(out)):
        raise SchemeFailure("non-finite value in the semi-discrete right-hand side")
    return out


def semidiscrete_rhs(field, config):
    """du_k/dt = (f_{k-1/2} - f_{k+1/2}) / dx as a :class:`CellField`-shaped array."""
    return rhs_means(field.means, config, field.grid.dx)


def cfl_dt(field, law, cfl, dx=None):
    means = field.means if isinstance(field, CellField) else np.asarray(field, float)
    if dx is None:
        dx = field.grid.dx
    speed = max(float(np.max(np.abs(law.wave_speed(means)))), SPEED_FLOOR)
    return cfl * dx / speed


def dp8_step(rhs, u, dt):
    """One fixed step of the 8th order Dormand-Prince method."""
    if not dt > 0:
        raise ValueError("dt must be positive")
    u = np.asarray(u, dtype=float)
    a, b = _dop853.A, _dop853.B
    k = np.empty((_dop853.N_STAGES,) + u.shape)
    for i in range(_dop853.N_STAGES):
        stage = u + dt * np.tensordot(a[i, :i], k[:i], axes=1) if i else u
        k[i] = rhs(stage)
        if not np.all(np.isfinite(k[i])):
            raise SchemeFailure(f"non-finite stage derivative in stage {i}")
    return u + dt * np.tensordot(b, k, axes=1)


@dataclass
class Snapshot:
    time: float
    field: CellField
    entropy: float


@dataclass
class Integration:
    snapshots: list = field(default_factory=list)
    times: list = field(default_factory=list)
    entropies: list = field(default_factory=list)

    @property
    def final(self):
        return self.snapshots[-1]


def integrate(field0, config, t_end, snapshot_times=(), max_steps=10_000_000):
    """March ``field0`` to ``t_end`` with CFL-limited DP8 steps.

    Steps are clipped to land exactly on every snapshot time, so snapshots
    are genuine scheme states. The final state is always recorded as the
    last snapshot; the entropy trace has one entry per accepted step.
    """
    if t_end < 0:
        raise ValueError("t_end must be nonnegative")
    events = sorted({float(t) for t in snapshot_times} | {float(t_end)})
    if events[0] < 0 or events[-1] > t_end:
        raise ValueError("snapshot times must lie in [0, t_end]")
    dx = field0.grid.dx
    rhs = lambda u: rhs_means(u, config, dx)
    law = config.law

    u = np.array(field0.means, dtype=float)
    t = 0.0
    out = Integration()
    e0 = total_entropy(field0, law)
    out.times.append(t)
    out.entropies.append(e0)
    pending = list(events)
    if pending[0] == 0.0:
        out.snapshots.append(Snapshot(0.0, field0, e0))
        pending.pop(0)

    steps = 0
    while pending:
        target = pending[0]
        dt = cfl_dt(u, law, config.cfl, dx)
        hit = t + dt * (1.0 + 1e-9) >= target
        if hit:
            dt = target - t
        u = dp8_step(rhs, u, dt)
        t = target if hit else t + dt
        steps += 1
        if steps > max_steps:
            raise SchemeFailure(f"exceeded {max_steps} steps before t={t_end}")
        cur = CellField(field0.grid, u)
        e = total_entropy(cur, law)
        out.times.append(t)
        out.entropies.append(e)
        while pending and pending[0] <= t:
            out.snapshots.append(Snapshot(pending.pop(0), cur, e))
    log.debug("integrated to t=%g in %d steps", t_end, steps)
    return out
