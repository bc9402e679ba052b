import csv

import numpy as np
import pytest

from dafermos_fv import cli
from dafermos_fv.grid import BoundaryCondition, read_field_csv
from dafermos_fv.harness import ExperimentSpec, convergence_study, entropy_compare, eoc, run_experiment
from dafermos_fv.problems import PROBLEMS, Problem, get_problem
from dafermos_fv.timeint import SchemeConfig


def read_rows(path):
    with open(path) as fh:
        return list(csv.reader(fh))


def test_spec_defaults_follow_problem():
    spec = ExperimentSpec("u2")
    assert spec.t_end == 0.2 and spec.snapshot_times == (0.2,)
    assert spec.scheme.bc is BoundaryCondition.OUTFLOW
    with pytest.raises(ValueError):
        ExperimentSpec("u1", t_end=0.5, snapshot_times=(0.6,))
    with pytest.raises(ValueError):
        ExperimentSpec("u9")


def test_run_u1_writes_three_snapshots(tmp_path):
    info = run_experiment(ExperimentSpec("u1", out=str(tmp_path)))
    assert info["status_line"] == "ok"
    names = sorted(p.name for p in info["snapshots"])
    assert names == [f"u1_mlf_bsphere_N50_t{t}.csv" for t in ("0.3", "0.6", "1.2")]
    trace = np.loadtxt(info["entropy"], delimiter=",", skiprows=1)
    assert trace[-1, 0] == 1.2
    assert np.all(np.diff(trace[:, 1]) <= 1e-10 * np.abs(trace[:-1, 1]))
    assert info["status"].read_text().strip() == "ok"


def test_run_u2_single_snapshot(tmp_path):
    info = run_experiment(ExperimentSpec("u2", out=str(tmp_path)))
    assert len(info["snapshots"]) == 1
    f = read_field_csv(info["snapshots"][0])
    assert f.grid.n_cells == 50 and f.grid.x_left == pytest.approx(0.5)


def test_run_t0_returns_projection(tmp_path):
    info = run_experiment(ExperimentSpec("u1", t_end=0.0, out=str(tmp_path)))
    f = read_field_csv(info["snapshots"][0])
    assert np.array_equal(f.means, get_problem("u1").initial_field(50).means)


def test_runs_are_bitwise_deterministic(tmp_path):
    spec_a = ExperimentSpec("u1", t_end=0.3, out=str(tmp_path / "a"))
    spec_b = ExperimentSpec("u1", t_end=0.3, out=str(tmp_path / "b"))
    a, b = run_experiment(spec_a), run_experiment(spec_b)
    for pa, pb in zip(a["snapshots"] + [a["entropy"]], b["snapshots"] + [b["entropy"]]):
        assert pa.read_bytes() == pb.read_bytes()


def test_failed_run_records_status(tmp_path, monkeypatch):
    from dafermos_fv import harness
    from dafermos_fv.timeint import SchemeFailure

    def boom(*a, **k):
        raise SchemeFailure("blew up")

    monkeypatch.setattr(harness, "integrate", boom)
    info = run_experiment(ExperimentSpec("u1", out=str(tmp_path)))
    assert info["status_line"].startswith("failed")
    assert "blew up" in info["status"].read_text()


def test_eoc_guard():
    assert eoc(1.0, 1.0, 50, 50) is None
    assert eoc(1.0, 0.25, 50, 100) == pytest.approx(2.0)


def test_godunov_convergence_is_first_order(tmp_path):
    spec = ExperimentSpec("u3", SchemeConfig(flux_kind="godunov", p=0))
    path = tmp_path / "eoc.csv"
    rows = convergence_study(spec, (25, 50, 100, 200), 1.0, path)
    assert rows[0][3] is None
    assert 0.8 < rows[-1][3] < 1.2
    lines = read_rows(path)
    assert lines[0] == ["N", "L1", "Linf", "EOC_L1", "EOC_Linf"]
    assert lines[1][3] == ""


def test_identical_levels_report_empty_eoc(tmp_path):
    spec = ExperimentSpec("u3", SchemeConfig(flux_kind="godunov", p=0))
    rows = convergence_study(spec, (20, 20), 0.2, tmp_path / "e.csv")
    assert rows[1][3] is None and rows[1][4] is None
    assert read_rows(tmp_path / "e.csv")[2][3:] == ["", ""]


def test_parallel_levels_match_serial():
    spec = ExperimentSpec("u3", SchemeConfig(flux_kind="godunov", p=0))
    serial = convergence_study(spec, (20, 40), 0.2)
    assert convergence_study(spec, (20, 40), 0.2, jobs=2) == serial


def test_convergence_refuses_post_shock():
    with pytest.raises(ValueError):
        convergence_study(ExperimentSpec("u1"), (25, 50), 0.5)


def test_entropy_compare_reference_equals_itself(tmp_path):
    ref_like = SchemeConfig(flux_kind="godunov", p=0, redistribute=False)
    spec = ExperimentSpec("u1", ref_like, n_cells=100, t_end=0.3)
    header, rows = entropy_compare([spec], reference_n=100, n_times=5, path=tmp_path / "e.csv")
    assert header == ["t", "E_godunov_bsphere_N100", "E_ref"]
    assert len(rows) == 5
    assert all(r[1] == r[2] for r in rows)
    assert read_rows(tmp_path / "e.csv")[0] == header


def test_entropy_compare_constant_data(monkeypatch):
    const = Problem("const", 0.0, 1.0, BoundaryCondition.PERIODIC, lambda x: 0 * x + 0.6,
                    default_t_end=0.2)
    monkeypatch.setitem(PROBLEMS, "const", const)
    specs = [ExperimentSpec("const", SchemeConfig(predictor=p), n_cells=20)
             for p in ("variance", "bsphere")]
    _, rows = entropy_compare(specs, reference_n=40, n_times=4)
    vals = np.array([r[1:] for r in rows])
    assert np.allclose(vals, 0.5 * 0.36, rtol=1e-14)


def test_entropy_compare_requires_common_problem():
    with pytest.raises(ValueError):
        entropy_compare([ExperimentSpec("u1"), ExperimentSpec("u3")])
    with pytest.raises(ValueError):
        entropy_compare([])


def test_cli_run_with_config_override(tmp_path, capsys):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text("# u2 at low resolution\nproblem = u2\nn = 20\npredictor=variance\n"
                   f"out = {tmp_path / 'o'}\nredistribute = off\n")
    assert cli.main(["run", "--config", str(cfg), "--n", "24", "--snapshots", "0.1,0.2"]) == 0
    out = capsys.readouterr().out
    assert "u2_mlf_variance_N24_t0.1.csv" in out and out.strip().endswith("ok")


def test_cli_converge(tmp_path, capsys):
    assert cli.main(["converge", "--flux", "godunov", "--order", "0", "--levels", "16,32",
                     "--t-end", "0.5", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "u3_godunov_bsphere_convergence.csv").exists()
    assert "EOC_L1" in capsys.readouterr().out


def test_cli_entropy(tmp_path, capsys):
    assert cli.main(["entropy", "--problem", "u1", "--n", "20", "--t-end", "0.2",
                     "--ref-n", "60", "--out", str(tmp_path)]) == 0
    header = read_rows(tmp_path / "u1_entropy_compare.csv")[0]
    assert header == ["t", "E_mlf_variance_N20", "E_mlf_bsphere_N20",
                      "E_mlf_bsphere-discard:2_N20", "E_ref"]


def test_cli_rejects_bad_config(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    with pytest.raises(SystemExit):
        cli.main(["run", "--config", str(cfg)])
    with pytest.raises(SystemExit):
        cli.main(["run", "--predictor", "bsphere-discard:9", "--out", str(tmp_path)])
