import csv
import io
import json

import pytest

import cli


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_cycle_text_report_thermal(capsys):
    assert cli.main(["cycle"]) == 0
    out = capsys.readouterr().out
    assert "eta <= eta_C holds" in out
    assert "eta_carnot" in out


def test_cycle_degenerate_note(capsys):
    assert cli.main(["cycle", "--omega1", "2", "--omega2", "2", "--r", "0.5"]) == 0
    assert "degenerate" in capsys.readouterr().out


def test_cycle_surpasses_carnot_note(capsys):
    assert cli.main(["cycle", "--medium", "ho", "--omega1", "1", "--omega2", "5",
                     "--th", "1.1", "--tc", "1", "--r", "1.2"]) == 0
    assert "surpasses Carnot" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    ["cycle", "--th", "1", "--tc", "2"],
    ["cycle", "--omega1", "5", "--omega2", "1"],
    ["cycle", "--r", "-1"],
    ["sweep", "--start", "3", "--stop", "1"],
    ["sweep", "--preset", "fig42"],
    ["sweep", "--series", "0.5"],
    ["surface", "--preset", "fig1"],
    ["verify", "--only", "no-such-check"],
])
def test_usage_errors_exit_2(argv):
    assert cli.main(argv) == 2


def test_argparse_rejects_missing_regime():
    with pytest.raises(SystemExit) as exc:
        cli.main(["limits"])
    assert exc.value.code == 2


def test_cycle_csv_is_deterministic(capsys):
    argv = ["cycle", "--medium", "tls", "--r", "0.5", "--format", "csv"]
    cli.main(argv)
    first = capsys.readouterr().out
    cli.main(argv)
    assert capsys.readouterr().out == first
    [row] = _rows(first)
    assert row["medium"] == "tls"
    assert float(row["r"]) == 0.5


def test_single_step_sweep_matches_cycle(capsys):
    cli.main(["cycle", "--medium", "ho", "--r", "0.3", "--format", "csv"])
    [cycle_row] = _rows(capsys.readouterr().out)
    cli.main(["sweep", "--medium", "ho", "--r", "0.3", "--axis", "omega_ratio",
              "--start", "5", "--stop", "5", "--steps", "1"])
    [sweep_row] = _rows(capsys.readouterr().out)
    assert float(sweep_row["W_over_Tc"]) == float(cycle_row["W_total"])
    assert sweep_row["eta"] == cycle_row["eta"]


def test_sweep_with_series(capsys):
    assert cli.main(["sweep", "--axis", "squeeze", "--start", "0", "--stop", "1", "--steps", "3",
                     "--series-axis", "omega_ratio", "--series", "2,4"]) == 0
    rows = _rows(capsys.readouterr().out)
    assert [(float(r["omega_ratio"]), float(r["r"])) for r in rows] == [
        (2.0, 0.0), (2.0, 0.5), (2.0, 1.0), (4.0, 0.0), (4.0, 0.5), (4.0, 1.0)]


def test_preset_sweep_to_json_file(tmp_path):
    path = tmp_path / "fig3.json"
    assert cli.main(["sweep", "--preset", "fig3", "--format", "json", "--output", str(path)]) == 0
    payload = json.loads(path.read_text())
    assert payload["meta"]["preset"] == "fig3"
    assert payload["meta"]["format"] == "json"
    assert len(payload["rows"]) == 31


def test_surface(capsys):
    assert cli.main(["surface", "--ratio-start", "2", "--ratio-stop", "3", "--ratio-steps", "2",
                     "--r-start", "0", "--r-stop", "1", "--r-steps", "3"]) == 0
    assert len(_rows(capsys.readouterr().out)) == 6


def test_config_file_sets_defaults(tmp_path, capsys):
    config = tmp_path / "engine.env"
    config.write_text("medium=ho\nomega2=3\nr=0.25\nformat=csv\n")
    assert cli.main(["cycle", "--config", str(config), "--th", "4"]) == 0
    [row] = _rows(capsys.readouterr().out)
    assert row["medium"] == "ho"
    assert float(row["omega2"]) == 3.0
    assert float(row["r"]) == 0.25
    assert float(row["T_h"]) == 4.0


def test_config_file_errors(tmp_path):
    assert cli.main(["cycle", "--config", str(tmp_path / "absent.env")]) == 2
    bad = tmp_path / "bad.env"
    bad.write_text("temperature=3\n")
    assert cli.main(["cycle", "--config", str(bad)]) == 2


@pytest.mark.parametrize("command, line", [
    ("cycle", "medium=qubit"),
    ("cycle", "format=xml"),
    ("verify", "inject-fault=energy-sign"),
])
def test_config_file_values_outside_choices_exit_2(tmp_path, caplog, command, line):
    config = tmp_path / "engine.env"
    config.write_text(line + "\n")
    assert cli.main([command, "--config", str(config)]) == 2
    assert "Choose from" in caplog.text


def test_verify_looser_tolerance_scale_passes(capsys):
    assert cli.main(["verify", "--only", "thermal-reduction", "--only", "otto-limit",
                     "--tolerance-scale", "1e-3"]) == 0
    assert "all checks passed" in capsys.readouterr().out


def test_limits(capsys):
    assert cli.main(["limits", "--regime", "low", "--omega2", "2", "--values", "10,20"]) == 0
    rows = _rows(capsys.readouterr().out)
    assert [float(r["regime_parameter"]) for r in rows] == [10.0, 20.0]
    assert float(rows[1]["relative_error"]) < float(rows[0]["relative_error"])


def test_optimize_json(capsys):
    assert cli.main(["optimize", "--medium", "ho", "--omega1", "0.5", "--omega2", "1",
                     "--upper", "20", "--format", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert 0.5 <= report["omega2_star"] <= 20.0
    assert report["omega2_star_high_T"] == pytest.approx(24 ** 0.5)


def test_verify_subset(capsys):
    assert cli.main(["verify", "--only", "otto-limit", "--only", "effective-temperature"]) == 0
    out = capsys.readouterr().out
    assert "PASS  otto-limit" in out
    assert "all checks passed" in out


def test_verify_detects_injected_fault(capsys, monkeypatch):
    monkeypatch.setattr("services.verify.FIRST_LAW_SAMPLES", 50)
    assert cli.main(["verify", "--only", "first-law", "--inject-fault", "qab-sign"]) == 1
    assert "FAIL  first-law" in capsys.readouterr().out
