import csv
import io
import json
import math
import subprocess
import sys
from importlib.resources import files

import jsonschema
import pytest

from qeiband.bounds import Rindler
from qeiband.cli import load_tolerances, main
from qeiband.report import ConsistencyReport, figure_thermal_band

BETA = 4.730040744862704026
C4 = BETA**4 / (16.0 * math.pi**2)

SCHEMA = json.loads(
    (files("qeiband") / "schema" / "output-envelope-v1.json").read_text()
)


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    env = json.loads(out)
    jsonschema.validate(env, SCHEMA)
    return code, env


def test_bound_inertial_envelope(capsys):
    code, env = run_json(capsys, ["bound", "inertial", "--d", "4", "--tau0", "1"])
    assert code == 0
    assert env["command"] == "bound"
    assert env["params"]["scenario"] == "inertial"
    assert env["params"]["tau0"] == 1.0
    assert env["tool_version"]
    (row,) = env["results"]
    assert row["direction"] == "lower"
    assert row["label"] == "clamped-mode"
    assert math.isclose(row["value"], -C4, rel_tol=1e-11)


def test_bound_infinite_window_serializes_inf(capsys):
    code, env = run_json(capsys, ["bound", "accel", "--alpha", "1"])
    assert code == 0
    assert env["params"]["tau0"] == "inf"
    labels = {r["label"] for r in env["results"]}
    assert labels == {"duration-limit", "awec-optimal"}


def test_exact_cylinder(capsys):
    code, env = run_json(capsys, ["exact", "cylinder", "--L", "1"])
    assert code == 0
    (row,) = env["results"]
    assert math.isclose(row["value"], -math.pi / 6.0, rel_tol=1e-12)
    assert row["n_terms"] == 0


def test_exact_torus_components(capsys):
    code, env = run_json(capsys, ["exact", "torus", "--L", "1"])
    assert code == 0
    (row,) = env["results"]
    assert math.isclose(row["energy_density"], -math.pi**2 / 90.0, rel_tol=1e-6)
    assert len(row["components"]) == 4
    assert "static frame" in row["frame"]
    assert row["tail_bound"] < 1e-8


def test_exact_misner_prefactor(capsys):
    code, env = run_json(capsys, ["exact", "misner", "--a", "2"])
    assert code == 0
    (row,) = env["results"]
    assert math.isclose(row["prefactor"], -0.53014573226053056387, rel_tol=1e-7)
    assert math.isclose(
        row["energy_density"], row["prefactor"] / (16.0 * math.pi**2), rel_tol=1e-12
    )


def test_check_rindler_passes(capsys):
    code, env = run_json(capsys, ["check", "rindler", "--xi", "1"])
    assert code == 0
    (row,) = env["results"]
    assert row["lower_satisfied"] is True
    assert row["upper_satisfied"] is True
    assert row["saturation"] is True
    assert math.isclose(row["exact"], row["lower"], rel_tol=1e-12)


def test_check_exit_code_follows_verdict(capsys, monkeypatch):
    import qeiband.cli as cli_mod

    failing = ConsistencyReport(
        scenario=Rindler(xi=1.0),
        exact=-1.0,
        lower=-0.5,
        upper=0.0,
        lower_satisfied=False,
        upper_satisfied=True,
        margin_lower=-0.5,
        saturation=False,
    )
    monkeypatch.setattr(cli_mod.report, "check", lambda sc, series_rel: failing)
    code, env = run_json(capsys, ["check", "rindler", "--xi", "1"])
    assert code == 1
    assert env["results"][0]["lower_satisfied"] is False


def test_csv_output_quotes_embedded_commas(capsys):
    code = main(["exact", "torus", "--L", "1", "--format", "csv"])
    assert code == 0
    out = capsys.readouterr().out
    rows = list(csv.reader(io.StringIO(out)))
    assert len(rows) == 2
    assert len(rows[0]) == len(rows[1])
    frame_idx = rows[0].index("frame")
    assert "static frame" in rows[1][frame_idx]


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["bound"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["check", "inertial", "--d", "4", "--tau0", "1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["bound", "inertial", "--d", "4", "--tau0", "nan"])
    assert exc.value.code == 2


def test_domain_errors_exit_3(capsys):
    assert main(["bound", "inertial", "--d", "4", "--tau0", "-1"]) == 3
    assert main(["check", "rindler", "--xi", "0"]) == 3
    assert main(["exact", "torus", "--L", "1", "--j", "3"]) == 3
    err = capsys.readouterr().err
    assert err.strip()


def test_unwritable_output_exits_4(capsys):
    assert (
        main(
            [
                "figure",
                "thermal-band",
                "--points",
                "8",
                "--lo",
                "0.5",
                "--hi",
                "3",
                "--out",
                "/nonexistent-dir/x.csv",
            ]
        )
        == 4
    )


def test_figure_outputs_and_determinism(tmp_path, capsys):
    out = tmp_path / "band.csv"
    argv = [
        "figure",
        "thermal-band",
        "--points",
        "12",
        "--lo",
        "0.5",
        "--hi",
        "3",
        "--out",
        str(out),
    ]
    code, env = run_json(capsys, argv)
    assert code == 0
    png = tmp_path / "band.png"
    assert out.exists() and png.exists()
    (row,) = env["results"]
    assert row["path"] == str(out)
    assert row["png"] == str(png)
    assert row["rows"] == 12

    first_csv = out.read_bytes()
    first_png = png.read_bytes()
    assert main(argv) == 0
    capsys.readouterr()
    assert out.read_bytes() == first_csv
    assert png.read_bytes() == first_png
    assert first_png[:8] == b"\x89PNG\r\n\x1a\n"


def test_figure_csv_round_trips_exactly(tmp_path, capsys):
    out = tmp_path / "band.csv"
    assert (
        main(
            [
                "figure",
                "thermal-band",
                "--points",
                "10",
                "--lo",
                "0.5",
                "--hi",
                "3",
                "--out",
                str(out),
            ]
        )
        == 0
    )
    capsys.readouterr()
    rows = list(csv.reader(out.read_text().splitlines()))
    header, data = rows[0], rows[1:]
    import numpy as np

    ref = figure_thermal_band(np.linspace(0.5, 3.0, 10))
    assert header[0] == "beta_over_L"
    for i, name in enumerate(header[1:], start=1):
        col = ref.columns[name]
        for k, r in enumerate(data):
            assert float(r[i]) == col[k]


def test_figure_json_format(tmp_path, capsys):
    out = tmp_path / "evals.json"
    code, env = run_json(
        capsys,
        [
            "figure",
            "accn-evals",
            "--format",
            "json",
            "--points",
            "6",
            "--lo",
            "0.2",
            "--hi",
            "20",
            "--out",
            str(out),
        ],
    )
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["id"] == "accn-evals"
    assert len(payload["grid"]) == 6
    assert set(payload["columns"]) == {"lambda_0", "lambda_1", "lambda_2"}
    assert (tmp_path / "evals.png").exists()


def test_figure_partial_grid_flags_rejected(capsys):
    # domain validation, not an argparse failure: exits 3 like other
    # DomainError paths
    assert main(["figure", "misner", "--points", "10", "--out", "x.csv"]) == 3
    assert "together" in capsys.readouterr().err


def test_tolerance_env_override(capsys, monkeypatch):
    monkeypatch.setenv("QEI_TOL", json.dumps({"series_rel": 1e-3}))
    code, env = run_json(capsys, ["exact", "cylinder", "--L", "1", "--beta", "0.5"])
    assert code == 0
    assert env["tolerances"]["series_rel"] == 1e-3
    loose_terms = env["results"][0]["n_terms"]

    monkeypatch.setenv("QEI_TOL", json.dumps({"series_rel": 1e-12}))
    code, env = run_json(capsys, ["exact", "cylinder", "--L", "1", "--beta", "0.5"])
    tight_terms = env["results"][0]["n_terms"]
    assert loose_terms < tight_terms


def test_tolerance_env_rejects_garbage(capsys, monkeypatch):
    monkeypatch.setenv("QEI_TOL", "not json")
    assert main(["bound", "inertial", "--d", "4", "--tau0", "1"]) == 2
    monkeypatch.setenv("QEI_TOL", json.dumps({"bogus": 1.0}))
    assert main(["bound", "inertial", "--d", "4", "--tau0", "1"]) == 2
    monkeypatch.setenv("QEI_TOL", json.dumps({"series_rel": -1.0}))
    assert main(["bound", "inertial", "--d", "4", "--tau0", "1"]) == 2
    err = capsys.readouterr().err
    assert "QEI_TOL" in err


def test_load_tolerances_defaults():
    tol = load_tolerances(env={})
    assert tol["series_rel"] == 1e-8
    assert tol["quad_rel"] == 1e-9
    assert tol["root_abs"] == 1e-10
    assert tol["oracle_grid"] == 4000


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qeiband", "--version"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "0.1.0" in proc.stdout
