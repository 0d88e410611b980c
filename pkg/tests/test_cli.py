"""Command-line front end: CSV contracts, exit codes, determinism."""

import csv
import math
import os

import pytest

from sqatom.cli import TIMESCALE_COLUMNS, fmt, main


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def _read_csv(path):
    with open(path, newline="") as handle:
        rows = list(csv.reader(handle))
    return rows[0], rows[1:]


BASE = """
gamma = 1.0
epsilon = 0.25
Omega = 1.0
Delta = 0.2
delta_N = 0.1
delta_M = 0.1
phi0 = 0.8
"""


def test_fmt_cells():
    assert fmt(None) == ""
    assert fmt(True) == "true"
    assert fmt(False) == "false"
    assert fmt(math.inf) == "inf"
    assert fmt(-math.inf) == "-inf"
    assert fmt(0.1) == "0.1"
    assert fmt(3) == "3"
    assert fmt("closed_form") == "closed_form"


def test_timescales_csv(tmp_path, capsys):
    cfg = _write(tmp_path, "run.cfg", BASE + "tau_m = 2.0\n")
    out = str(tmp_path / "out.csv")
    assert main(["timescales", "--config", cfg, "--out", out, "--quiet"]) == 0
    header, rows = _read_csv(out)
    assert header == TIMESCALE_COLUMNS
    assert len(rows) == 1
    row = dict(zip(header, rows[0]))
    assert float(row["gamma"]) == 1.0
    assert float(row["Gamma"]) > 0.0
    assert float(row["tau_C"]) == pytest.approx(1.0 / (2.0 * float(row["Gamma"])), rel=1e-12)
    assert float(row["ratio"]) == pytest.approx(
        0.5 + 1.0 / (2.0 * float(row["Gamma"])), rel=1e-12)
    assert float(row["d"]) > 0.0


def test_timescales_stdout(tmp_path, capsys):
    cfg = _write(tmp_path, "run.cfg", BASE)
    assert main(["timescales", "--config", cfg]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].split(",") == TIMESCALE_COLUMNS
    assert len(lines) == 2
    # no window: dwell and ratio cells stay empty
    row = dict(zip(TIMESCALE_COLUMNS, lines[1].split(",")))
    assert row["tau_D"] == ""
    assert row["ratio"] == ""


def test_vacuum_reports_infinite_coherence_time(tmp_path):
    cfg = _write(tmp_path, "run.cfg", "gamma = 1.0\nOmega = 1.0\nDelta = 0.3\n")
    out = str(tmp_path / "out.csv")
    assert main(["timescales", "--config", cfg, "--out", out, "--quiet"]) == 0
    header, rows = _read_csv(out)
    row = dict(zip(header, rows[0]))
    assert row["Gamma"] == "0.0"
    assert row["tau_C"] == "inf"


def test_amplifying_point_withholds_dwell(tmp_path, capsys):
    text = BASE.replace("phi0 = 0.8", "phi0 = -1.5") + "tau_m = 2.0\n"
    cfg = _write(tmp_path, "run.cfg", text)
    out = str(tmp_path / "out.csv")
    with pytest.warns(RuntimeWarning):
        assert main(["timescales", "--config", cfg, "--out", out, "--quiet"]) == 0
    header, rows = _read_csv(out)
    row = dict(zip(header, rows[0]))
    assert float(row["Gamma"]) < 0.0
    assert row["tau_C"] == "inf"
    assert row["tau_D"] == ""
    assert row["ratio"] == ""


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_byte_identical_reruns(tmp_path):
    # the swept phases include amplifying points, which warn; the CSV
    # bytes must be identical either way
    cfg = _write(tmp_path, "run.cfg", BASE + "sweep = phi0 -1.5 4.6 25\n")
    out_a = str(tmp_path / "a.csv")
    out_b = str(tmp_path / "b.csv")
    assert main(["sweep", "--config", cfg, "--out", out_a, "--quiet"]) == 0
    assert main(["sweep", "--config", cfg, "--out", out_b, "--quiet"]) == 0
    with open(out_a, "rb") as fa, open(out_b, "rb") as fb:
        assert fa.read() == fb.read()


def test_spectra_grid(tmp_path):
    cfg = _write(tmp_path, "run.cfg", BASE + "x_min = -5.0\nx_max = 5.0\nx_points = 21\n")
    out = str(tmp_path / "spectra.csv")
    assert main(["spectra", "--config", cfg, "--out", out, "--quiet"]) == 0
    header, rows = _read_csv(out)
    assert header == ["x", "N", "M_abs"]
    assert len(rows) == 21
    assert float(rows[0][0]) == -5.0 and float(rows[-1][0]) == 5.0
    for row in rows:
        n, m = float(row[1]), float(row[2])
        assert m >= n >= 0.0


def test_steady_state_row(tmp_path):
    cfg = _write(tmp_path, "run.cfg", BASE)
    out = str(tmp_path / "ss.csv")
    assert main(["steady-state", "--config", cfg, "--out", out, "--quiet"]) == 0
    header, rows = _read_csv(out)
    row = dict(zip(header, rows[0]))
    assert -1.0 <= float(row["sigma_z"]) <= 1.0
    assert row["physical"] in ("true", "false")
    assert float(row["d"]) > 0.0


def test_dynamics_trajectory(tmp_path):
    cfg = _write(tmp_path, "run.cfg", BASE + "t_final = 5.0\nn_points = 11\n")
    out = str(tmp_path / "dyn.csv")
    assert main(["dynamics", "--config", cfg, "--out", out, "--quiet"]) == 0
    header, rows = _read_csv(out)
    assert header == ["t", "re_sigma_minus", "im_sigma_minus", "sigma_z",
                      "trace", "min_eigenvalue"]
    assert len(rows) == 11
    assert float(rows[0][0]) == 0.0
    assert float(rows[-1][0]) == 5.0
    assert float(rows[0][3]) == -1.0
    for row in rows:
        assert float(row[4]) == pytest.approx(1.0, abs=1e-12)


def test_zeno_single_point(tmp_path):
    cfg = _write(tmp_path, "run.cfg", BASE + "tau_m = 4.0\nGamma = 0.5\n")
    out = str(tmp_path / "zeno.csv")
    assert main(["zeno", "--config", cfg, "--out", out, "--quiet"]) == 0
    header, rows = _read_csv(out)
    assert header == ["tau_m", "tau_D_exact", "tau_D_frequent", "ratio", "sustainable"]
    row = dict(zip(header, rows[0]))
    assert float(row["tau_m"]) == 4.0
    assert float(row["ratio"]) == 1.0
    assert row["sustainable"] == "false"


def test_zeno_window_sweep_with_override(tmp_path):
    cfg = _write(tmp_path, "run.cfg",
                 BASE + "Gamma = 0.25\nsweep = tau_m 0.1 10.0 13 log\n")
    out = str(tmp_path / "zeno.csv")
    assert main(["zeno", "--config", cfg, "--out", out, "--quiet"]) == 0
    header, rows = _read_csv(out)
    assert len(rows) == 13
    for row_list in rows:
        row = dict(zip(header, row_list))
        tau_m = float(row["tau_m"])
        ratio = float(row["ratio"])
        assert ratio == pytest.approx(0.5 + 1.0 / (tau_m * 0.25), rel=1e-12)
        assert row["sustainable"] == ("true" if ratio > 1.0 else "false")
        assert float(row["tau_D_exact"]) < tau_m


def test_zeno_gamma_sweep(tmp_path):
    cfg = _write(tmp_path, "run.cfg",
                 BASE + "tau_m = 2.0\nsweep = Gamma 0.0 2.0 5\n")
    out = str(tmp_path / "zeno.csv")
    assert main(["zeno", "--config", cfg, "--out", out, "--quiet"]) == 0
    header, rows = _read_csv(out)
    first = dict(zip(header, rows[0]))
    assert first["ratio"] == "inf"
    assert first["sustainable"] == "true"
    assert float(first["tau_D_exact"]) == 1.0


def test_zeno_requires_window(tmp_path, capsys):
    cfg = _write(tmp_path, "run.cfg", BASE)
    assert main(["zeno", "--config", cfg]) == 1
    assert "tau_m" in capsys.readouterr().err


def test_sustainability_rows(tmp_path):
    cfg = _write(tmp_path, "run.cfg", BASE.replace("phi0 = 0.8\n", ""))
    out = str(tmp_path / "sus.csv")
    assert main(["sustainability", "--config", cfg, "--out", out, "--quiet"]) == 0
    header, rows = _read_csv(out)
    assert header == ["method", "phi_star", "phi_star_companion", "zeta",
                      "omega_tilde_required", "feasible", "residual"]
    methods = [row[0] for row in rows]
    assert methods == ["closed_form", "bisection"]
    closed = dict(zip(header, rows[0]))
    scanned = dict(zip(header, rows[1]))
    diff = abs(float(closed["phi_star"]) - float(scanned["phi_star"])) % math.pi
    assert min(diff, math.pi - diff) <= 1e-10
    assert float(closed["residual"]) <= 1e-10


def test_sustainability_linear_model_adds_condition_row(tmp_path, capsys):
    text = BASE.replace("phi0 = 0.8\n", "phase_model = linear\n")
    cfg = _write(tmp_path, "run.cfg", text)
    out = str(tmp_path / "sus.csv")
    assert main(["sustainability", "--config", cfg, "--out", out, "--quiet"]) == 0
    header, rows = _read_csv(out)
    methods = [row[0] for row in rows]
    assert methods == ["closed_form", "bisection", "linear_phase_condition"]
    condition = dict(zip(header, rows[2]))
    # small solved phase: the linearized condition applies silently
    assert abs(float(condition["phi_star"])) < 0.1
    assert "warning" not in capsys.readouterr().err


def test_sustainability_warns_when_solved_phase_is_large(tmp_path, capsys):
    # a strong two-photon shift pushes the root far from zero, outside
    # the linearized condition's comfort zone
    text = BASE.replace("phi0 = 0.8\n", "phase_model = linear\n").replace(
        "delta_M = 0.1", "delta_M = 3.0")
    cfg = _write(tmp_path, "run.cfg", text)
    out = str(tmp_path / "sus.csv")
    assert main(["sustainability", "--config", cfg, "--out", out, "--quiet"]) == 0
    header, rows = _read_csv(out)
    condition = dict(zip(header, rows[2]))
    assert abs(float(condition["phi_star"])) > 0.1
    assert "warning" in capsys.readouterr().err


def test_sweep_with_sustainability_columns(tmp_path):
    text = BASE + "outputs = timescales sustainability\nsweep = epsilon 0.05 0.4 8\n"
    cfg = _write(tmp_path, "run.cfg", text)
    out = str(tmp_path / "sweep.csv")
    assert main(["sweep", "--config", cfg, "--out", out, "--quiet"]) == 0
    header, rows = _read_csv(out)
    assert header[:len(TIMESCALE_COLUMNS)] == TIMESCALE_COLUMNS
    assert header[len(TIMESCALE_COLUMNS):] == [
        "phi_star", "zeta", "omega_tilde_required", "feasible", "residual", "error"]
    assert len(rows) == 8
    for row_list in rows:
        row = dict(zip(header, row_list))
        assert row["error"] == ""
        assert float(row["residual"]) <= 1e-10


def test_sweep_partial_failure_keeps_exit_zero(tmp_path):
    # epsilon sweep crossing the gamma/2 threshold: the invalid points
    # carry error cells, the valid ones real numbers
    text = BASE + "sweep = epsilon 0.3 0.7 5\n"
    cfg = _write(tmp_path, "run.cfg", text)
    out = str(tmp_path / "sweep.csv")
    assert main(["sweep", "--config", cfg, "--out", out, "--quiet"]) == 0
    header, rows = _read_csv(out)
    errors = [dict(zip(header, r))["error"] for r in rows]
    assert errors[0] == "" and errors[-1] != ""
    assert sum(1 for e in errors if e) == 3


def test_sweep_total_failure_exits_two(tmp_path):
    text = BASE + "sweep = epsilon 0.5 0.9 4\n"
    cfg = _write(tmp_path, "run.cfg", text)
    out = str(tmp_path / "sweep.csv")
    assert main(["sweep", "--config", cfg, "--out", out, "--quiet"]) == 2
    header, rows = _read_csv(out)
    assert all(dict(zip(header, r))["error"] != "" for r in rows)


def test_sweep_requires_sweep_line(tmp_path, capsys):
    cfg = _write(tmp_path, "run.cfg", BASE)
    assert main(["sweep", "--config", cfg]) == 1


def test_config_error_exit(tmp_path, capsys):
    cfg = _write(tmp_path, "run.cfg", "gamma = 1.0\nOmega = 1.0\nbogus = 3\n")
    assert main(["timescales", "--config", cfg]) == 1
    assert "line 3" in capsys.readouterr().err


def test_missing_config_exit(tmp_path, capsys):
    assert main(["timescales", "--config", str(tmp_path / "nope.cfg")]) == 1


def test_runtime_error_exit(tmp_path, capsys):
    cfg = _write(tmp_path, "run.cfg", "gamma = 1.0\nOmega = 0.0\nepsilon = 0.2\n")
    assert main(["timescales", "--config", cfg]) == 2


def test_bad_usage_exit(tmp_path, capsys):
    assert main(["timescales"]) == 1
    assert main(["unknown-command", "--config", "x"]) == 1


def test_plot_requires_out(tmp_path, capsys):
    cfg = _write(tmp_path, "run.cfg", BASE)
    assert main(["spectra", "--config", cfg, "--plot"]) == 1
    assert "--out" in capsys.readouterr().err


def test_plot_writes_figure(tmp_path):
    cfg = _write(tmp_path, "run.cfg", BASE + "x_points = 32\n")
    out = str(tmp_path / "spectra.csv")
    assert main(["spectra", "--config", cfg, "--out", out, "--plot", "--quiet"]) == 0
    png = str(tmp_path / "spectra.png")
    assert os.path.exists(png)
    assert os.path.getsize(png) > 0


def test_plot_note_for_single_point_reports(tmp_path, capsys):
    cfg = _write(tmp_path, "run.cfg", BASE)
    out = str(tmp_path / "ts.csv")
    assert main(["timescales", "--config", cfg, "--out", out, "--plot"]) == 0
    err = capsys.readouterr().err
    assert "no figure" in err
    assert not os.path.exists(str(tmp_path / "ts.png"))


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_sweep_plot(tmp_path):
    cfg = _write(tmp_path, "run.cfg", BASE + "sweep = phi0 -1.5 4.6 13\n")
    out = str(tmp_path / "sweep.csv")
    assert main(["sweep", "--config", cfg, "--out", out, "--plot", "--quiet"]) == 0
    assert os.path.exists(str(tmp_path / "sweep.png"))
