import json

import numpy as np
import pytest

from unruhsim import (
    ConfigError,
    KrausScalarFault,
    SweepConfig,
    run_sweep,
    run_verify,
    to_csv,
    to_json,
)
from unruhsim.cli import main
from unruhsim.sweep import CSV_COLUMNS, SCHEMA, r_grid, render
from unruhsim.verify import first_failure

SMALL = SweepConfig(r_min=0.0, r_max=1.2, points=9, n_max=32)


# ---------------------------------------------------------------- config


@pytest.mark.parametrize(
    "kwargs",
    [
        {"r_min": -0.1},
        {"r_min": 2.0, "r_max": 1.0},
        {"r_min": 1.0, "r_max": 1.0},
        {"points": 1},
        {"n_max": 4},
        {"abs_tol": 0.0},
        {"output_format": "xml"},
        {"seedless": False},
    ],
)
def test_sweep_config_rejects_invalid(kwargs):
    with pytest.raises(ConfigError):
        SweepConfig(**kwargs)


def test_grid_endpoints_exact():
    grid = r_grid(SweepConfig(r_min=0.0, r_max=3.0, points=200))
    assert grid[0] == 0.0
    assert grid[-1] == 3.0
    assert grid.size == 200
    assert np.all(np.diff(grid) > 0)


# ---------------------------------------------------------------- sweep output


def test_sweep_first_row_without_acceleration():
    records = run_sweep(SMALL)
    assert len(records) == SMALL.points
    first = records[0]
    assert first.r == 0.0
    assert first.fe_closed == 1.0
    assert first.s_ar == 0.0
    assert first.mutual_info == pytest.approx(2.0, abs=1e-10)
    assert first.subadd_margin == pytest.approx(2.0, abs=1e-10)


def test_csv_schema_and_precision():
    records = run_sweep(SMALL)
    text = to_csv(records)
    lines = text.splitlines()
    assert lines[0] == f"# schema: {SCHEMA}"
    assert lines[1] == ",".join(CSV_COLUMNS)
    assert len(lines) == 2 + len(records)
    cells = lines[2].split(",")
    assert len(cells) == len(CSV_COLUMNS)
    # 12 significant digits in scientific notation, integer truncation column
    assert cells[0] == "0.00000000000e+00"
    assert cells[1] == "1.00000000000e+00"
    assert cells[-1] == str(records[0].n_used)
    assert float(cells[7]) == pytest.approx(records[0].mutual_info, rel=1e-11)


def test_json_schema_fields():
    records = run_sweep(SMALL)
    doc = json.loads(to_json(SMALL, records))
    assert doc["schema"] == SCHEMA
    assert doc["config"]["points"] == SMALL.points
    assert doc["config"]["n_max"] == SMALL.n_max
    assert len(doc["rows"]) == len(records)
    assert tuple(doc["rows"][0].keys()) == CSV_COLUMNS


def test_sweep_deterministic():
    text_a = render(SMALL, run_sweep(SMALL))
    text_b = render(SMALL, run_sweep(SMALL))
    assert text_a.encode() == text_b.encode()


# ---------------------------------------------------------------- verify


def test_verify_passes_on_sane_config():
    cfg = SweepConfig(r_min=0.0, r_max=2.0, points=21, n_max=64)
    results = run_verify(cfg)
    assert first_failure(results) is None
    names = [res.name for res in results]
    assert "channel-vs-analytic" in names
    assert "truncation-tail-bound" in names


def test_verify_reports_insufficient_truncation():
    # with adaptivity off, n_max = 8 cannot cover r = 3: the tail-bound
    # check must fail instead of silently passing
    cfg = SweepConfig(points=5, n_max=8, adaptive=False)
    results = run_verify(cfg, names=("truncation-tail-bound",))
    assert len(results) == 1
    assert not results[0].passed
    assert "insufficient truncation" in results[0].detail


@pytest.mark.parametrize("index", [0, 1, 5, 48])
def test_verify_fault_injection_detected(index):
    cfg = SweepConfig(points=5, n_max=64)
    fault = KrausScalarFault(index=index, offset=1e-3)
    results = run_verify(cfg, fault=fault, names=("channel-vs-analytic",))
    assert len(results) == 1
    assert not results[0].passed


def test_verify_unfaulted_channel_check_passes():
    cfg = SweepConfig(points=5, n_max=64)
    results = run_verify(cfg, names=("channel-vs-analytic",))
    assert results[0].passed


# ---------------------------------------------------------------- CLI


def test_cli_sweep_to_file(tmp_path):
    out = tmp_path / "rows.csv"
    code = main(
        [
            "sweep",
            "--r-max", "1.0",
            "--points", "5",
            "--n-max", "32",
            "--output", str(out),
        ]
    )
    assert code == 0
    text = out.read_text()
    assert text.startswith(f"# schema: {SCHEMA}")
    assert len(text.splitlines()) == 7


def test_cli_sweep_json_stdout(capsys):
    code = main(["sweep", "--r-max", "1.0", "--points", "3", "--n-max", "32",
                 "--format", "json"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["schema"] == SCHEMA
    assert len(doc["rows"]) == 3


def test_cli_sweep_deterministic_files(tmp_path):
    args = ["sweep", "--r-max", "1.5", "--points", "7", "--n-max", "32"]
    out_a, out_b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--output", str(out_a)]) == 0
    assert main(args + ["--output", str(out_b)]) == 0
    assert out_a.read_bytes() == out_b.read_bytes()


def test_cli_point(capsys):
    code = main(["point", "--r", "0.5", "--n-max", "32"])
    assert code == 0
    out = capsys.readouterr().out
    assert "entanglement fidelity (closed form)" in out
    assert "effective truncation" in out


def test_cli_point_rejects_negative(capsys):
    assert main(["point", "--r", "-1.0"]) == 2


def test_cli_config_error_exits_two(capsys):
    assert main(["sweep", "--points", "1"]) == 2
    assert "error:" in capsys.readouterr().err


def test_cli_usage_error_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["sweep", "--format", "xml"])
    assert exc.value.code == 2


def test_cli_verify_exit_codes(capsys):
    ok = main(["verify", "--r-max", "1.5", "--points", "7", "--n-max", "64"])
    assert ok == 0
    out = capsys.readouterr().out
    assert "all" in out and "checks passed" in out

    bad = main(["verify", "--r-max", "3.0", "--points", "5", "--n-max", "8",
                "--no-adaptive"])
    assert bad == 1
    out = capsys.readouterr().out
    assert "truncation-tail-bound" in out
