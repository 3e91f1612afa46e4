import json
import subprocess
import sys
from pathlib import Path

import pytest

from torsor_lab import cli
from torsor_lab.model_io import load_model, model_from_json, model_to_json
from torsor_lab.errors import ValidationError

ROOT = Path(__file__).resolve().parents[1]
MODELS = ROOT / "models"


def run(argv, capsys):
    status = cli.main(["--no-timestamp", *argv])
    return status, json.loads(capsys.readouterr().out)


def test_invariants_a4(capsys):
    status, rep = run(["invariants", "--model", str(MODELS / "a4.json")], capsys)
    assert status == 0 and rep["a"] == "1/2"


def test_h1_trivial_gamma(capsys):
    status, rep = run(["h1", "--model", str(MODELS / "trivial_gamma.json")], capsys)
    assert status == 0 and rep["classes"] == 1


def test_count_quadratic(capsys, tmp_path):
    out = tmp_path / "q.csv"
    status, rep = run(["count", "quadratic", "--bound", "3", "--csv", str(out)], capsys)
    assert status == 0 and rep["connected"] == 1
    assert out.read_text().splitlines()[0] == "B,total,connected"


def test_count_then_fit(capsys, tmp_path):
    out = tmp_path / "k.csv"
    run(["count", "kummer", "--m", "3", "--bound", "1e5", "--csv", str(out)], capsys)
    status, rep = run(["fit", "--csv", str(out)], capsys)
    assert status == 0 and 0.9 < rep["alpha"] < 1.2


def test_exponent_and_deciders(capsys):
    status, rep = run(["exponent", "--model", "builtin:A4"], capsys)
    assert rep["exponent"] == "1/2" and rep["decomposition"]["A"] == [0, 4, 5, 11]
    status, rep = run(["semicommutative", "--model", "builtin:A5"], capsys)
    assert status == 0 and rep["semicommutative"] is False
    status, rep = run(["hypersolvable", "--model", str(MODELS / "s3_natural.json")], capsys)
    assert rep["orders"] == [3, 2]


def test_twist_and_connected(capsys):
    status, rep = run(["twist", "--model", str(MODELS / "s3_natural.json"), "--cocycle", "0,2"], capsys)
    assert status == 0 and rep["classes"][0] == rep["classes"][1]
    assert rep["invariants"][0] == rep["invariants"][1]
    status, rep = run(["connected", "--model", "builtin:C2_over_C2", "--cocycle", "0,1"], capsys)
    assert rep["connected"] is True


def test_counting_file(capsys, tmp_path):
    f = tmp_path / "c.json"
    f.write_text(json.dumps({"values": [0, "1/3", "1/3", 1]}))
    status, rep = run(["invariants", "--model", "builtin:A4", "--counting", "file",
                       "--counting-file", str(f)], capsys)
    assert status == 0 and rep["a"] == "3" and rep["b_points"] == 2


def test_error_exit_codes(capsys, monkeypatch):
    status, rep = run(["h1", "--model", "missing.json"], capsys)
    assert status == 2 and rep["error"] == "ValidationError"
    status, rep = run(["count", "kummer", "--m", "7", "--bound", "10"], capsys)
    assert status == 2 and rep["error"] == "UnsupportedModulus"
    status, rep = run(["connected", "--model", "builtin:C2_over_C2", "--cocycle", "1,0"], capsys)
    assert status == 2 and rep["error"] == "NotACocycle"
    monkeypatch.setenv("TORSOR_LAB_BOUND", "8")
    status, rep = run(["semicommutative", "--model", "builtin:A4"], capsys)
    assert status == 3 and rep["error"] == "BoundExceeded"


def test_reports_are_deterministic(capsys):
    a = run(["invariants", "--model", "builtin:A4"], capsys)
    b = run(["invariants", "--model", "builtin:A4"], capsys)
    assert a == b
    status, report = cli.run(cli.RunConfig("h1", model="builtin:C1"))
    assert "timestamp" in report


def test_run_config_validation():
    with pytest.raises(ValidationError):
        cli.RunConfig("count", family="quadratic", bound="-1").validate()
    with pytest.raises(ValidationError):
        cli.RunConfig("invariants", model="builtin:A4", counting="bogus").validate()


def test_model_round_trip():
    m = load_model(MODELS / "mu3.json")
    assert len(m.places) == 2
    again = model_from_json(model_to_json(m.gg))
    assert again.gg.act == m.gg.act and again.gg.chi == m.gg.chi


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "torsor_lab.cli", "--no-timestamp", "h1",
                           "--model", "builtin:C1"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["classes"] == 1
