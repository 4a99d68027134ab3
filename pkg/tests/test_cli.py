import csv
import io
import json
import subprocess
import sys

import pytest

from qutrit_bell.cli import fmt, main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_fmt():
    assert fmt(-0.0) == "0"
    assert fmt(True) == "true"
    assert fmt(None) == ""
    assert fmt(1 / 3) == "0.333333333333"


def test_table1_csv(capsys):
    code, out = run(capsys, "table1", "--n", "3", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["label"] for r in rows] == [f"psi{a}" for a in range(9)]
    assert float(rows[0]["entropy"]) == pytest.approx(1.58496250072, abs=1e-11)
    assert float(rows[8]["entropy"]) == pytest.approx(1.25162916739, abs=1e-11)
    assert float(rows[8]["negativity"]) == pytest.approx(5 / 6, abs=1e-11)
    assert [int(r["parity"]) for r in rows] == [1, 1, -1, 1, 1, -1, 1, -1, 1]


def test_states_json(capsys):
    code, out = run(capsys, "states", "--n", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert [s["label"] for s in doc["states"]] == ["Phi+", "Psi+", "Psi-", "Phi-"]
    assert doc["states"][2]["amplitudes"][2] == [-0.707106781187, 0.0]


def test_expectations_qubit(capsys):
    code, out = run(capsys, "expectations", "--n", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert [r["value"] for r in doc["rows"]] == [-2.82842712475, 0.0, 2.82842712475, 0.0]


def test_expectations_qutrit_sign_note(capsys):
    code, out = run(capsys, "expectations", "--n", "3")
    assert code == 0
    assert "# sign differs from reference: psi2, psi7" in out


def test_fidelity_qutrit(capsys):
    code, out = run(capsys, "fidelity", "--n", "3", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert len(doc["computational_form"]["differences_from_reference"]) == 8


def test_synthesize(capsys):
    code, out = run(capsys, "synthesize", "--n", "2", "--format", "csv")
    assert code == 0
    assert out.splitlines()[1:] == ["1,1,-1.41421356237", "3,3,-1.41421356237"]


@pytest.mark.parametrize("n", ["2", "3"])
def test_verify_passes(capsys, n):
    code, out = run(capsys, "verify", "--n", n, "--samples", "50")
    assert code == 0
    assert "false" not in out


def test_random_check_deterministic(capsys):
    _, a = run(capsys, "random-check", "--n", "3", "--seed", "17", "--samples", "40", "--format", "json")
    _, b = run(capsys, "random-check", "--n", "3", "--seed", "17", "--samples", "40", "--format", "json")
    assert a == b
    assert json.loads(a)["passed"] is True


def test_out_file(tmp_path, capsys):
    path = tmp_path / "report.csv"
    code, out = run(capsys, "table1", "--n", "2", "--format", "csv", "--out", str(path))
    assert code == 0
    assert out == ""
    assert path.read_text().startswith("label,entropy,negativity")


@pytest.mark.parametrize("argv", [["bogus"], ["verify", "--n", "4"], ["verify", "--samples", "0"],
                                  ["verify", "--seed", "-1"], ["verify", "--tol", "0"]])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qutrit_bell", "table1", "--n", "2", "--format", "csv"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1].startswith("Phi+,1,0.5")
