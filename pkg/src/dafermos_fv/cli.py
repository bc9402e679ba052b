"""Command line interface: ``run``, ``converge`` and ``entropy`` subcommands.

Settings come from an optional flat ``key=value`` config file; command line
flags override it.
"""

import argparse
import logging
import sys
from pathlib import Path

from .harness import (DEFAULT_LEVELS, DEFAULT_REF_N, ExperimentSpec, convergence_study,
                      entropy_compare, run_experiment)
from .problems import get_problem
from .radius import PredictorKind
from .timeint import SchemeConfig

# config key -> argparse dest
CONFIG_KEYS = {
    "problem": "problem",
    "flux": "flux",
    "predictor": "predictor",
    "p": "order",
    "order": "order",
    "cfl": "cfl",
    "n": "n",
    "t_end": "t_end",
    "snapshots": "snapshots",
    "redistribute": "redistribute",
    "visc_width": "visc_width",
    "out": "out",
    "levels": "levels",
    "ref_n": "ref_n",
}

DEFAULTS = {
    "problem": None,
    "flux": "mlf",
    "predictor": None,
    "order": 4,
    "cfl": 0.1,
    "n": 50,
    "t_end": None,
    "snapshots": None,
    "redistribute": "on",
    "visc_width": 11,
    "out": "out",
    "levels": None,
    "ref_n": DEFAULT_REF_N,
}


def read_config(path):
    """Parse ``key=value`` lines; ``#`` starts a comment."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or key not in CONFIG_KEYS:
            raise ValueError(f"{path}:{lineno}: cannot parse {raw!r}")
        values[CONFIG_KEYS[key]] = value.strip()
    return values


def _floats(text):
    return tuple(float(v) for v in str(text).replace(",", " ").split())


def _ints(text):
    return tuple(int(v) for v in str(text).replace(",", " ").split())


def _on_off(text):
    text = str(text).strip().lower()
    if text in ("on", "true", "yes", "1"):
        return True
    if text in ("off", "false", "no", "0"):
        return False
    raise ValueError(f"expected on/off, got {text!r}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dafermos-fv",
        description="Entropy-rate finite-volume experiments for Burgers' equation.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value settings file")
    common.add_argument("--problem", choices=["u1", "u2", "u3"])
    common.add_argument("--n", type=int, help="number of cells")
    common.add_argument("--t-end", dest="t_end", type=float)
    common.add_argument("--flux", choices=["mlf", "dafermos", "godunov", "llf"])
    common.add_argument("--predictor",
                        help="variance, bsphere or bsphere-discard:<k> "
                             "(comma-separated list for 'entropy')")
    common.add_argument("--order", type=int, help="recovery polynomial degree p")
    common.add_argument("--cfl", type=float)
    common.add_argument("--redistribute", choices=["on", "off"])
    common.add_argument("--visc-width", dest="visc_width", type=int)
    common.add_argument("--out", help="output directory (run) or file prefix")
    common.add_argument("--jobs", type=int, default=1, help="parallel worker processes")

    run = sub.add_parser("run", parents=[common], help="single run with snapshots")
    run.add_argument("--snapshots", help="comma-separated snapshot times")

    conv = sub.add_parser("converge", parents=[common], help="EOC table against the exact solution")
    conv.add_argument("--levels", help="comma-separated cell counts")

    ent = sub.add_parser("entropy", parents=[common],
                         help="entropy traces against a fine Godunov reference")
    ent.add_argument("--ref-n", dest="ref_n", type=int)
    return parser


def resolve(args):
    """Merge defaults, config file and flags into one settings dict."""
    settings = dict(DEFAULTS)
    if args.config:
        settings.update(read_config(args.config))
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    return settings


def make_scheme(settings, predictor=None):
    return SchemeConfig(
        p=int(settings["order"]),
        predictor=PredictorKind.parse(predictor or settings["predictor"] or "bsphere"),
        flux_kind=settings["flux"],
        redistribute=_on_off(settings["redistribute"]),
        cfl=float(settings["cfl"]),
        bc=get_problem(settings["problem"]).bc,
        visc_width=int(settings["visc_width"]),
    )


def make_spec(settings, predictor=None):
    t_end = settings["t_end"]
    snaps = settings["snapshots"]
    return ExperimentSpec(
        problem=settings["problem"],
        scheme=make_scheme(settings, predictor),
        n_cells=int(settings["n"]),
        t_end=None if t_end is None else float(t_end),
        snapshot_times=None if snaps is None else _floats(snaps),
        out=str(settings["out"]),
    )


def cmd_run(settings, jobs):
    info = run_experiment(make_spec(settings))
    for path in info["snapshots"]:
        print(path)
    if info["entropy"]:
        print(info["entropy"])
    print(info["status_line"])
    return 0 if info["status_line"] == "ok" else 1


def cmd_converge(settings, jobs):
    if settings["t_end"] is None:
        settings["t_end"] = 1.0
    spec = make_spec(settings)
    levels = _ints(settings["levels"]) if settings["levels"] else DEFAULT_LEVELS
    out = Path(settings["out"])
    path = out / f"{spec.stem.rsplit('_N', 1)[0]}_convergence.csv"
    rows = convergence_study(spec, levels, float(settings["t_end"]), path, jobs)
    print(f"{'N':>6} {'L1':>12} {'Linf':>12} {'EOC_L1':>7} {'EOC_Linf':>8}")
    for n, l1, linf, e1, einf in rows:
        e1s = "" if e1 is None else f"{e1:.3f}"
        eis = "" if einf is None else f"{einf:.3f}"
        print(f"{n:>6} {l1:12.4e} {linf:12.4e} {e1s:>7} {eis:>8}")
    print(path)
    return 0


def cmd_entropy(settings, jobs):
    preds = settings["predictor"] or "variance,bsphere,bsphere-discard:2"
    specs = [make_spec(settings, p.strip()) for p in str(preds).split(",") if p.strip()]
    out = Path(settings["out"])
    path = out / f"{specs[0].problem}_entropy_compare.csv"
    header, rows = entropy_compare(specs, int(settings["ref_n"]), path=path, jobs=jobs)
    worst = max(max(row[1:-1]) - row[-1] for row in rows)
    print(f"max(E_scheme - E_ref) over matched times: {worst:.3e}")
    print(path)
    return 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    handler = {"run": cmd_run, "converge": cmd_converge, "entropy": cmd_entropy}[args.command]
    try:
        settings = resolve(args)
        settings["problem"] = settings["problem"] or (
            "u3" if args.command == "converge" else "u1")
        return handler(settings, args.jobs)
    except ValueError as exc:
        parser.error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
