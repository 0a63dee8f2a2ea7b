"""Command-line contract: exit codes, diagnostics, selftest, waveform export."""

import json

import numpy as np
import pytest

import cvpower.four_wire
import cvpower.pipeline
from cvpower import builtin_example_json
from cvpower.cli import main


@pytest.fixture()
def example1_path(tmp_path):
    path = tmp_path / "example1.json"
    path.write_text(builtin_example_json("example1"))
    return path


@pytest.fixture()
def example2_path(tmp_path):
    path = tmp_path / "example2.json"
    path.write_text(builtin_example_json("example2"))
    return path


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------


def test_analyze_table_output(example2_path, capsys):
    assert main(["analyze", "--input", str(example2_path)]) == 0
    out = capsys.readouterr().out
    assert "complex-vector power analysis: example2" in out
    assert "||S_e||" in out


def test_analyze_json_output(example2_path, capsys):
    assert main(["analyze", "--input", str(example2_path), "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["powers"]["p"] == pytest.approx(648.66, rel=0.01)
    assert payload["powers"]["s_norm"] == pytest.approx(876.05, rel=0.01)
    assert payload["ieee1459"] is None


def test_analyze_ieee1459_flag(example2_path, capsys):
    assert main(["analyze", "--input", str(example2_path), "--format", "json", "--ieee1459"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["ieee1459"]["s_plus"] == pytest.approx(848.0, rel=0.02)
    assert payload["ieee1459"]["s_u"] == pytest.approx(220.0, rel=0.02)


def test_analyze_out_file(example1_path, tmp_path, capsys):
    out_path = tmp_path / "report.txt"
    assert main(["analyze", "--input", str(example1_path), "--out", str(out_path)]) == 0
    assert capsys.readouterr().out == ""
    assert "||D_e|| = ||D_pm_e||" in out_path.read_text()


def test_analyze_missing_file(tmp_path, capsys):
    missing = tmp_path / "missing.json"
    assert main(["analyze", "--input", str(missing)]) == 2
    assert "missing.json" in capsys.readouterr().err


def test_analyze_malformed_document_names_field(tmp_path, capsys):
    document = json.loads(builtin_example_json("example1"))
    document["voltages"][1] = {"mag": -3.0, "angle_deg": 10.0}
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(document))
    assert main(["analyze", "--input", str(path)]) == 2
    assert "voltages[1].mag" in capsys.readouterr().err


def test_analyze_three_wire_kcl_violation_exits_2(tmp_path, capsys):
    document = json.loads(builtin_example_json("example2"))
    document["neutral"] = {"mode": "three_wire"}  # currents do not sum to zero
    path = tmp_path / "three_wire.json"
    path.write_text(json.dumps(document))
    assert main(["analyze", "--input", str(path)]) == 2
    assert "sum to zero" in capsys.readouterr().err


def test_analyze_integrity_error_exits_3(example2_path, capsys, monkeypatch):
    # Sabotage an internal consistency route; the pipeline must refuse to report.
    monkeypatch.setattr(
        cvpower.pipeline, "sequence_dot", lambda v, i: complex(1e6, 1e6)
    )
    assert main(["analyze", "--input", str(example2_path)]) == 3
    assert "integrity" in capsys.readouterr().err.lower()


# ---------------------------------------------------------------------------
# waveform
# ---------------------------------------------------------------------------


def test_waveform_mean_power(example1_path, tmp_path):
    out = tmp_path / "waves.csv"
    assert main(["waveform", "--input", str(example1_path), "--out", str(out)]) == 0
    data = np.loadtxt(out, delimiter=",", skiprows=1)
    assert data.shape == (512, 11)
    assert abs(data[:, 7].mean()) <= 1e-9


def test_waveform_rejects_low_sampling(example1_path, tmp_path, capsys):
    out = tmp_path / "waves.csv"
    code = main(
        ["waveform", "--input", str(example1_path), "--samples-per-cycle", "4", "--out", str(out)]
    )
    assert code == 2
    assert "samples_per_cycle" in capsys.readouterr().err


def test_waveform_balanced_input_constant_cross_columns(tmp_path):
    document = json.loads(builtin_example_json("example1"))
    document["currents"] = [
        {"mag": 0.5 * entry["mag"], "angle_deg": entry["angle_deg"]}
        for entry in document["voltages"]
    ]
    path = tmp_path / "balanced.json"
    path.write_text(json.dumps(document))
    out = tmp_path / "waves.csv"
    assert main(["waveform", "--input", str(path), "--out", str(out)]) == 0
    data = np.loadtxt(out, delimiter=",", skiprows=1)
    for column in (8, 9, 10):
        assert np.max(np.abs(data[:, column] - data[:, column].mean())) <= 1e-12


def test_waveform_cycle_count(example2_path, tmp_path):
    out = tmp_path / "waves.csv"
    code = main(
        [
            "waveform",
            "--input",
            str(example2_path),
            "--cycles",
            "3",
            "--samples-per-cycle",
            "32",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    data = np.loadtxt(out, delimiter=",", skiprows=1)
    assert data.shape == (96, 11)


# ---------------------------------------------------------------------------
# selftest
# ---------------------------------------------------------------------------


def test_selftest_passes(capsys):
    assert main(["selftest"]) == 0
    out = capsys.readouterr().out
    assert "example2 ‖S_e‖ 876.05" in out
    assert "example1" in out
    assert "FAIL" not in out
    assert out.strip().endswith("selftest: all checks passed")


def test_selftest_detects_corrupted_k_factor(capsys, monkeypatch):
    monkeypatch.setattr(cvpower.four_wire, "k_factor", lambda rho: 0.9)
    assert main(["selftest"]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_help_documents_exit_codes(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["--help"])
    assert excinfo.value.code == 0
    assert "exit codes" in capsys.readouterr().out
