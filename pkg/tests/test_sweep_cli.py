"""Sweep machinery and command-line interface tests.

CLI runs use small J and short transients; they exercise wiring, formats,
exit codes, and determinism rather than estimate quality.
"""

import os
from dataclasses import replace

import numpy as np
import pytest

from wavereg.cli import EXIT_DEGENERATE, EXIT_IO, EXIT_OK, EXIT_USAGE, main
from wavereg.sweep import SweepRow, sweep


def rows_without_timing(rows):
    return [replace(r, wall_time_seconds=0.0) for r in rows]


# ------------------------------------------------------------------- sweep

def test_sweep_rows_ordered_and_deterministic(warm_kernels):
    grid = [1.6, 1.2, 1.8]
    rows = sweep(sorted(grid), J=8, transient=2000, p=4, seed=1)
    assert [r.sigma for r in rows] == sorted(grid)
    assert all(r.status == "ok" for r in rows)
    assert all(r.epsilon == (max(r.sigma - 1.5, 0.0)) ** 2 for r in rows)
    again = sweep(sorted(grid), J=8, transient=2000, p=4, seed=1)
    assert rows_without_timing(rows) == rows_without_timing(again)


def test_sweep_parallel_matches_serial(warm_kernels):
    grid = np.linspace(1.1, 1.9, 4)
    serial = sweep(grid, J=8, transient=1000, p=4, seed=3, workers=1)
    parallel = sweep(grid, J=8, transient=1000, p=4, seed=3, workers=2)
    assert rows_without_timing(serial) == rows_without_timing(parallel)


def test_sweep_scan_orders_reports_best_pearson(warm_kernels):
    rows = sweep([1.7], J=8, transient=1000, seed=0, scan_orders=True)
    assert rows[0].p in range(4, 21, 2)


def test_sweep_row_failure_record():
    row = SweepRow.failed(1.2, 0.0, 0.5, "degenerate: empty")
    assert row.status.startswith("degenerate")
    assert np.isnan(row.s)


# --------------------------------------------------------------------- cli

def run_cli(tmp_path, monkeypatch, *argv):
    monkeypatch.setenv("WAVEREG_OUT_DIR", str(tmp_path))
    return main(list(argv))


def test_cli_weierstrass_table_and_determinism(tmp_path, monkeypatch):
    args = (
        "weierstrass", "--A-grid", "0.5,0.7", "--J", "10", "--p", "4",
        "--out", "w.csv",
    )
    assert run_cli(tmp_path, monkeypatch, *args) == EXIT_OK
    first = (tmp_path / "w.csv").read_bytes()
    lines = first.decode().splitlines()
    assert lines[0] == "A,s_theoretical,s_estimated,abs_error,pearson"
    assert lines[1].startswith("0.5,1.0,")  # exact closed form in output
    assert run_cli(tmp_path, monkeypatch, *args) == EXIT_OK
    assert (tmp_path / "w.csv").read_bytes() == first


def test_cli_weierstrass_series_dump(tmp_path, monkeypatch):
    code = run_cli(
        tmp_path, monkeypatch,
        "weierstrass", "--A-grid", "0.7", "--J", "10", "--p", "4",
        "--out", "w.csv", "--dump-series",
    )
    assert code == EXIT_OK
    series = (tmp_path / "w_series_A0.70000.csv").read_text().splitlines()
    assert series[0] == "level,log2_sup,excluded"
    assert len(series) == 11


def test_cli_weierstrass_bad_grid_is_usage_error(tmp_path, monkeypatch):
    code = run_cli(tmp_path, monkeypatch,
                   "weierstrass", "--A-grid", "1.5", "--out", "w.csv")
    assert code == EXIT_USAGE


def test_cli_sna_run_with_dumps(tmp_path, monkeypatch):
    code = run_cli(
        tmp_path, monkeypatch,
        "sna", "--sigma", "1.7", "--epsilon", "0.04", "--J", "10",
        "--N0", "2000", "--p", "4", "--out", "run.csv",
        "--dump-mesh", "--dump-scatter", "--dump-series",
    )
    assert code == EXIT_OK
    table = (tmp_path / "run.csv").read_text().splitlines()
    assert table[0].startswith("sigma,epsilon,A,B,tau,s,log2C,pearson")
    assert table[1].startswith("1.7,0.04,,,")
    scatter = (tmp_path / "run_scatter.csv").read_text().splitlines()
    assert scatter[0] == "theta,x"
    assert len(scatter) == (1 << 10) + 1
    assert (tmp_path / "run_mesh.csv").exists()
    assert (tmp_path / "run_series.csv").exists()


def test_cli_sna_binary_mesh_dump(tmp_path, monkeypatch):
    code = run_cli(
        tmp_path, monkeypatch,
        "sna", "--sigma", "1.7", "--J", "8", "--N0", "500", "--p", "2",
        "--out", "b.csv", "--dump-mesh", "--format", "binary",
    )
    assert code == EXIT_OK
    from wavereg import load_mesh

    mesh = load_mesh(tmp_path / "b_mesh.bin", fmt="binary")
    assert mesh.J == 8


def test_cli_sna_degenerate_input(tmp_path, monkeypatch, capsys):
    code = run_cli(
        tmp_path, monkeypatch,
        "sna", "--sigma", "0.5", "--J", "10", "--N0", "100000",
        "--out", "dead.csv",
    )
    assert code == EXIT_DEGENERATE
    err = capsys.readouterr().err
    assert "Lyapunov" in err
    table = (tmp_path / "dead.csv").read_text()
    assert "degenerate" in table


def test_cli_sweep_tiny(tmp_path, monkeypatch):
    code = run_cli(
        tmp_path, monkeypatch,
        "sweep", "--grid-values", "1.4,1.6", "--J", "8", "--N0", "1000",
        "--p", "4", "--workers", "2", "--out", "sw.csv",
    )
    assert code == EXIT_OK
    lines = (tmp_path / "sw.csv").read_text().splitlines()
    assert lines[0].startswith("sigma,epsilon,tau,s,log2C,pearson,p,admissible")
    assert len(lines) == 3
    assert lines[1].startswith("1.4,0.0,")
    assert lines[2].startswith("1.6,0.010000000000000018,")  # (1.6-1.5)^2


def test_cli_sweep_rejects_grid_outside_range(tmp_path, monkeypatch):
    code = run_cli(tmp_path, monkeypatch,
                   "sweep", "--grid-values", "0.5,1.5", "--out", "x.csv")
    assert code == EXIT_USAGE


def test_cli_transfer_iterates(tmp_path, monkeypatch):
    code = run_cli(
        tmp_path, monkeypatch,
        "transfer", "--sigma", "1.5", "--k-max", "3", "--grid-n", "64",
        "--out", "t.csv",
    )
    assert code == EXIT_OK
    lines = (tmp_path / "t.csv").read_text().splitlines()
    assert lines[0] == "theta,phi_0,phi_1,phi_2,phi_3"
    data = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])
    assert data.shape == (64, 5)
    # iterates decrease pointwise toward the attractor
    for k in range(1, 4):
        assert np.all(data[:, k + 1] <= data[:, k] + 1e-12)


def test_cli_config_file_defaults_and_override(tmp_path, monkeypatch):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("J=8\nN0=500\np=2\nsigma=1.7\n")
    code = run_cli(tmp_path, monkeypatch,
                   "sna", "--config", str(cfg), "--out", "cfg.csv")
    assert code == EXIT_OK
    # explicit flag beats the config value
    code = run_cli(
        tmp_path, monkeypatch,
        "sna", "--config", str(cfg), "--sigma", "1.9", "--out", "cfg2.csv",
    )
    assert code == EXIT_OK
    assert (tmp_path / "cfg2.csv").read_text().splitlines()[1].startswith("1.9,")


def test_cli_missing_subcommand_is_usage_error(tmp_path, monkeypatch):
    assert run_cli(tmp_path, monkeypatch) == EXIT_USAGE
    assert run_cli(tmp_path, monkeypatch, "--config") == EXIT_USAGE


def test_cli_unwritable_output_is_io_error(tmp_path, monkeypatch):
    code = run_cli(
        tmp_path, monkeypatch,
        "transfer", "--sigma", "1.5", "--grid-n", "8",
        "--out", "/proc/definitely/not/writable.csv",
    )
    assert code == EXIT_IO


def test_cli_out_dir_env_var(tmp_path, monkeypatch):
    sub = tmp_path / "outputs"
    monkeypatch.setenv("WAVEREG_OUT_DIR", str(sub))
    assert main(["transfer", "--sigma", "1.5", "--grid-n", "8",
                 "--out", "t.csv"]) == EXIT_OK
    assert (sub / "t.csv").exists()


def test_cli_rejects_out_of_range_depth(tmp_path, monkeypatch):
    code = run_cli(tmp_path, monkeypatch,
                   "sna", "--sigma", "1.5", "--J", "31", "--out", "x.csv")
    assert code == EXIT_USAGE
    code = run_cli(tmp_path, monkeypatch,
                   "weierstrass", "--J", "3", "--out", "x.csv")
    assert code == EXIT_USAGE
