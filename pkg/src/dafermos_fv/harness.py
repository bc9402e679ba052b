"""Experiment driver: single runs, convergence studies, entropy comparisons.

Every output is CSV with a header row and 17 significant digits.
"""

import csv
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .exact import field_error
from .grid import write_field_csv
from .problems import get_problem
from .timeint import SchemeConfig, SchemeFailure, integrate

log = logging.getLogger(__name__)

DEFAULT_LEVELS = (25, 50, 100, 200)
DEFAULT_REF_N = 5000
N_MATCHED_TIMES = 20


def fmt(value):
    return f"{value:.17g}"


@dataclass(frozen=True)
class ExperimentSpec:
    problem: str
    scheme: SchemeConfig = field(default_factory=SchemeConfig)
    n_cells: int = 50
    t_end: float = None
    snapshot_times: tuple = None
    out: str = "out"

    def __post_init__(self):
        prob = get_problem(self.problem)
        if self.t_end is None:
            object.__setattr__(self, "t_end", prob.default_t_end)
        if self.snapshot_times is None:
            snaps = tuple(t for t in prob.default_snapshots if t <= self.t_end)
            object.__setattr__(self, "snapshot_times", snaps or (self.t_end,))
        if self.scheme.bc is not prob.bc:
            object.__setattr__(self, "scheme", replace(self.scheme, bc=prob.bc))
        if self.t_end < 0:
            raise ValueError("t_end must be nonnegative")
        if any(t < 0 or t > self.t_end for t in self.snapshot_times):
            raise ValueError("snapshot times must lie in [0, t_end]")

    @property
    def stem(self):
        return f"{self.problem}_{self.scheme.flux_kind}_{self.scheme.predictor}_N{self.n_cells}"


def _run(spec, extra_times=()):
    prob = get_problem(spec.problem)
    field0 = prob.initial_field(spec.n_cells)
    times = tuple(spec.snapshot_times) + tuple(extra_times)
    return integrate(field0, spec.scheme, spec.t_end, times)


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) if isinstance(v, (float, np.floating)) else
                        ("" if v is None else v) for v in row])


def run_experiment(spec):
    """Run one spec and write snapshot, entropy-trace and status files.

    Returns a dict with the written paths, the integration (or ``None``) and
    the status line.
    """
    out = Path(spec.out)
    out.mkdir(parents=True, exist_ok=True)
    status_path = out / f"{spec.stem}_status.txt"
    written = {"snapshots": [], "entropy": None, "status": status_path}
    try:
        result = _run(spec)
    except SchemeFailure as exc:
        status = f"failed: {exc}"
        status_path.write_text(status + "\n")
        log.error("%s: %s", spec.stem, status)
        return {**written, "result": None, "status_line": status}
    wanted = set(spec.snapshot_times)
    for snap in result.snapshots:
        if snap.time in wanted:
            path = out / f"{spec.stem}_t{snap.time:g}.csv"
            write_field_csv(path, snap.field)
            written["snapshots"].append(path)
    trace = out / f"{spec.stem}_entropy.csv"
    write_csv(trace, ["t", "entropy"], zip(result.times, result.entropies))
    written["entropy"] = trace
    status = "ok"
    status_path.write_text(status + "\n")
    return {**written, "result": result, "status_line": status}


def _map(func, items, jobs):
    items = list(items)
    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs <= 1 or len(items) <= 1:
        return [func(it) for it in items]
    with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as pool:
        return list(pool.map(func, items))


def _level_errors(args):
    spec, t_eval = args
    prob = get_problem(spec.problem)
    num = _run(spec).final.field
    ref = prob.exact_field(spec.n_cells, t_eval)
    return field_error(num, ref, "L1"), field_error(num, ref, "Linf")


def eoc(err_coarse, err_fine, n_coarse, n_fine):
    """Observed order between two levels; ``None`` when undefined."""
    if n_fine == n_coarse or err_coarse <= 0 or err_fine <= 0:
        return None
    return math.log(err_coarse / err_fine) / math.log(n_fine / n_coarse)


def convergence_study(template, levels=DEFAULT_LEVELS, t_eval=1.0, path=None, jobs=1):
    """Errors against the exact solution on each level, with observed orders.

    Rows are ``(N, L1, Linf, EOC_L1, EOC_Linf)``; the EOC of a row compares
    it with the previous (coarser) level.
    """
    prob = get_problem(template.problem)
    if t_eval >= prob.breaking_time:
        raise ValueError(f"t_eval={t_eval} is past the shock time {prob.breaking_time:.6g}")
    specs = [replace(template, n_cells=int(n), t_end=t_eval, snapshot_times=(t_eval,))
             for n in levels]
    errs = _map(_level_errors, [(s, t_eval) for s in specs], jobs)
    rows = []
    for i, (n, (l1, linf)) in enumerate(zip(levels, errs)):
        if i == 0:
            rows.append((int(n), l1, linf, None, None))
            continue
        pn = levels[i - 1]
        pl1, plinf = errs[i - 1]
        rows.append((int(n), l1, linf, eoc(pl1, l1, pn, n), eoc(plinf, linf, pn, n)))
    if path is not None:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        write_csv(path, ["N", "L1", "Linf", "EOC_L1", "EOC_Linf"], rows)
    return rows


def _entropy_at(args):
    spec, times = args
    res = _run(spec, times)
    by_time = {s.time: s.entropy for s in res.snapshots}
    return [by_time[t] for t in times]


def entropy_compare(specs, reference_n=DEFAULT_REF_N, n_times=N_MATCHED_TIMES,
                    path=None, jobs=1):
    """Entropy of each spec next to a first-order Godunov reference run.

    Traces are sampled at ``n_times`` evenly spaced times in [0, t_end]
    that every run hits exactly. Returns ``(header, rows)``.
    """
    specs = list(specs)
    if not specs:
        raise ValueError("need at least one spec")
    first = specs[0]
    if any(s.problem != first.problem or s.t_end != first.t_end for s in specs):
        raise ValueError("all specs must share problem and t_end")
    times = tuple(float(t) for t in np.linspace(0.0, first.t_end, n_times))
    ref_scheme = replace(first.scheme, flux_kind="godunov", p=0,
                         predictor="bsphere", redistribute=False)
    ref = replace(first, scheme=ref_scheme, n_cells=int(reference_n),
                  snapshot_times=(first.t_end,))
    traces = _map(_entropy_at, [(s, times) for s in specs + [ref]], jobs)
    labels = []
    for s in specs:
        label = f"E_{s.scheme.flux_kind}_{s.scheme.predictor}_N{s.n_cells}"
        while label in labels:
            label += "'"
        labels.append(label)
    header = ["t"] + labels + ["E_ref"]
    rows = [(t, *vals) for t, vals in zip(times, zip(*traces))]
    if path is not None:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        write_csv(path, header, rows)
    return header, rows
