"""Exit criteria for the solver, one test per criterion.

Run ``pytest tests/test_acceptance.py`` to get a PASS/FAIL line per
criterion in the terminal summary.
"""

import time

import mpmath
import numpy as np
import pytest

from dafermos_fv.exact import field_error
from dafermos_fv.flux import (dafermos_flux_burgers, dafermos_flux_search, dissipation_rate,
                              godunov_flux, mlf_flux)
from dafermos_fv.grid import total_variation
from dafermos_fv.harness import ExperimentSpec, convergence_study, entropy_compare
from dafermos_fv.law import BURGERS
from dafermos_fv.problems import get_problem
from dafermos_fv.radius import AdmissibleInterval
from dafermos_fv.recon import recovery_matrix
from dafermos_fv.timeint import SchemeConfig, dp8_step, integrate
from dafermos_fv.visc import ViscosityProfile, hann_kernel, redistribute

PREDICTORS = ("variance", "bsphere", "bsphere-discard:2")


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


def random_adm(rng):
    return AdmissibleInterval(rng.uniform(-2, 2), rng.uniform(0, 2))


def test_c01_godunov_dafermos_equivalence(criterion):
    rng = np.random.default_rng(101)
    pairs = rng.uniform(-2, 2, (10_000, 2))
    with Timer() as t:
        mismatches = sum(
            godunov_flux(BURGERS, ul, ur)
            != dafermos_flux_burgers(AdmissibleInterval.hull(ul, ur), ul, ur)
            for ul, ur in pairs)
    criterion("C1 Godunov == Dafermos on conv(u_l,u_r)",
              f"mismatches={mismatches}/10000 time={t.elapsed:.2f}s")
    assert mismatches == 0
    assert t.elapsed < 1.0


def test_c02_mlf_more_dissipative(criterion):
    rng = np.random.default_rng(102)
    worst = -np.inf
    with Timer() as t:
        for _ in range(10_000):
            adm = random_adm(rng)
            ul, ur = rng.uniform(-2, 2, 2)
            wl, wr = BURGERS.entropy_vars(ul), BURGERS.entropy_vars(ur)
            d_mlf = dissipation_rate(mlf_flux(BURGERS, adm, ul, ur), wl, wr)
            d_daf = dissipation_rate(dafermos_flux_burgers(adm, ul, ur), wl, wr)
            worst = max(worst, d_mlf - d_daf)
    criterion("C2 MLF dissipation <= Dafermos + 1e-12",
              f"max excess={worst:.3e} time={t.elapsed:.2f}s")
    assert worst <= 1e-12
    assert t.elapsed < 1.0


def test_c03_closed_form_vs_search(criterion):
    rng = np.random.default_rng(103)
    worst = -np.inf
    with Timer() as t:
        for _ in range(10_000):
            adm = random_adm(rng)
            ul, ur = rng.uniform(-2, 2, 2)
            lip = float(BURGERS.max_wave_speed(*adm.bounds))
            diff = abs(dafermos_flux_search(BURGERS, adm, ul, ur, 201)
                       - dafermos_flux_burgers(adm, ul, ur))
            worst = max(worst, diff - lip * (2 * adm.radius / 200))
    criterion("C3 closed form vs 201-sample search",
              f"max(diff - bound)={worst:.3e} time={t.elapsed:.2f}s")
    assert worst <= 0.0
    assert t.elapsed < 2.0


def test_c04_redistribution_dissipation(criterion):
    rng = np.random.default_rng(104)
    kernel = hann_kernel(11)
    worst_rel, min_margin = 0.0, np.inf
    with Timer() as t:
        for _ in range(1000):
            jump = rng.uniform(0.05, 1.0, 64) * rng.choice([-1.0, 1.0], 64)
            mu = rng.exponential(size=64)
            prof = ViscosityProfile(mu * jump * jump, jump * jump)
            # un-redistributed dissipation: sum_j mu_j |dW_j|^2 = sum_j d_j
            base = np.sum(mu * jump * jump)
            one = np.sum(redistribute(prof, kernel, "periodic", scaling=1.0) * prof.jump_sq)
            five = np.sum(redistribute(prof, kernel, "periodic") * prof.jump_sq)
            worst_rel = max(worst_rel, abs(one - base) / base)
            min_margin = min(min_margin, five - base)
    criterion("C4 redistribution keeps (A=1) / raises (A=5) dissipation",
              f"max rel dev={worst_rel:.2e} min(A=5 excess)={min_margin:.3e} "
              f"time={t.elapsed:.2f}s")
    assert kernel.scaling == pytest.approx(5.0)
    assert worst_rel <= 1e-12
    assert min_margin >= 0.0
    assert t.elapsed < 2.0


def test_c05_hann_constants(criterion):
    l = np.arange(-5, 6)
    raw_sum = float(np.sum(np.cos(np.pi * l / 10) ** 2))
    k = hann_kernel(11)
    criterion("C5 Hann width 11", f"sum={raw_sum!r} sigma0={k.center_weight!r} A={float(k.scaling)!r}")
    assert abs(raw_sum - 5.0) <= 1e-14
    assert k.center_weight == pytest.approx(0.2, abs=1e-14)
    assert k.scaling == pytest.approx(5.0, abs=1e-13)


def test_c06_reconstruction_exactness(criterion):
    from fractions import Fraction
    worst = 0.0
    with Timer() as t:
        for p in range(5):
            r = p + 1
            # unit cells m = 1-r .. r spanning [m-1, m]; interface at x = 0; data (x + 1/2)^q
            cells = np.arange(1 - r, r + 1)
            for q in range(p + 1):
                means = np.array([float(Fraction((Fraction(m) + Fraction(1, 2)) ** (q + 1)
                                                 - (Fraction(m) - Fraction(1, 2)) ** (q + 1), q + 1))
                                  for m in cells])
                exact = 0.5 ** q
                cand = recovery_matrix(p) @ means
                worst = max(worst, np.max(np.abs(cand - exact)) / exact)
    criterion("C6 recovery exact for degree <= p <= 4", f"max rel err={worst:.2e} time={t.elapsed:.3f}s")
    assert worst <= 1e-9
    assert t.elapsed < 1.0


@pytest.mark.slow
def test_c07_fourth_order_convergence(criterion, tmp_path):
    spec = ExperimentSpec("u3", SchemeConfig(predictor="bsphere", flux_kind="mlf",
                                             redistribute=True, cfl=0.1, p=4))
    with Timer() as t:
        rows = convergence_study(spec, (25, 50, 100, 200), 1.0, tmp_path / "eoc.csv")
    eocs = [r[3] for r in rows[1:]]
    criterion("C7 u3 L1 EOC (N=100->200) in [3.3, 5.5]",
              f"EOCs={[round(e, 3) for e in eocs]} L1={[f'{r[1]:.2e}' for r in rows]} "
              f"time={t.elapsed:.1f}s")
    assert 3.3 <= eocs[-1] <= 5.5
    assert t.elapsed < 300


@pytest.mark.parametrize("predictor", PREDICTORS)
def test_c08_shock_robustness(criterion, predictor):
    prob = get_problem("u1")
    f0 = prob.initial_field(50)
    tv0 = total_variation(f0, "periodic")
    with Timer() as t:
        res = integrate(f0, SchemeConfig(predictor=predictor), 1.2, (0.3, 0.6, 1.2))
    tvs = [float(total_variation(s.field, "periodic")) for s in res.snapshots]
    e = np.array(res.entropies)
    rises = np.diff(e) - 1e-10 * np.abs(e[:-1])
    finite = all(np.all(np.isfinite(s.field.means)) for s in res.snapshots)
    criterion(f"C8 u1 N=50 shock robustness [{predictor}]",
              f"TV0={tv0:.4f} TV={[round(v, 4) for v in tvs]} "
              f"max entropy rise={rises.max():.2e} time={t.elapsed:.1f}s")
    assert finite
    assert [s.time for s in res.snapshots] == [0.3, 0.6, 1.2]
    assert max(tvs) <= tv0 + 0.5
    assert rises.max() <= 0.0
    assert t.elapsed < 30


@pytest.mark.slow
def test_c09_entropy_below_reference(criterion):
    specs = [ExperimentSpec("u1", SchemeConfig(predictor=p), n_cells=50, t_end=1.2)
             for p in PREDICTORS]
    with Timer() as t:
        header, rows = entropy_compare(specs, reference_n=5000, n_times=20)
    vals = np.array([r[1:] for r in rows])
    excess = vals[:, :-1] - vals[:, -1:]
    criterion("C9 u1 N=50 entropies <= Godunov N=5000 + 1e-6",
              f"max excess={excess.max():.3e} at 20 times time={t.elapsed:.1f}s")
    assert len(rows) == 20 and rows[0][0] == 0.0 and rows[-1][0] == 1.2
    assert excess.max() <= 1e-6
    assert t.elapsed < 600


@pytest.mark.parametrize("predictor", PREDICTORS)
def test_c10_rarefaction(criterion, predictor):
    prob = get_problem("u2")
    cfg = SchemeConfig(predictor=predictor, bc="outflow")
    errs = []
    with Timer() as t:
        for n in (50, 100, 200):
            fin = integrate(prob.initial_field(n), cfg, 0.2).final.field
            errs.append(field_error(fin, prob.exact_field(n, 0.2)))
            if n == 50:
                drop = max(0.0, -np.diff(fin.means).min())
    criterion(f"C10 u2 rarefaction [{predictor}]",
              f"L1={[f'{e:.3e}' for e in errs]} max downward step={drop:.2e} time={t.elapsed:.1f}s")
    assert errs[0] > errs[1] > errs[2]
    assert drop <= 0.05
    assert t.elapsed < 60


def test_c11_dp8_order(criterion):
    # u' = -u^3 + sin t, u(0) = 1 on [0, 4]; reference from a Taylor-series solver
    mpmath.mp.dps = 30
    ref = float(mpmath.odefun(lambda t, u: -u ** 3 + mpmath.sin(t), 0, 1)(4))
    rhs = lambda y: np.array([-y[0] ** 3 + np.sin(y[1]), 1.0])

    def solve(n):
        y = np.array([1.0, 0.0])
        for _ in range(n):
            y = dp8_step(rhs, y, 4.0 / n)
        return y[0]

    with Timer() as t:
        e16, e32 = abs(solve(16) - ref), abs(solve(32) - ref)
    order = np.log2(e16 / e32)
    criterion("C11 DP8 order 8 +/- 0.5", f"errors=({e16:.2e}, {e32:.2e}) order={order:.3f} "
              f"time={t.elapsed:.3f}s")
    assert e32 > 1e-14  # still above roundoff
    assert abs(order - 8) <= 0.5
    assert t.elapsed < 1.0
