import json
import subprocess
import sys

import pytest

from torus_nielsen.cli import main, parse_matrix, parse_range
from torus_nielsen.report import Report


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_report_case_ii(capsys):
    code, out = run(capsys, "report", "--A", "1,0,0,1", "--B", "1,0,0,3", "--c1", "2", "--c2", "0", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["case"]["label"] == "II"
    assert data["mf"]["value"] == 4 and data["trace"]["nielsen"] == 4 and data["oracle"]["count"] == 4
    assert data["agreement"]["agree"] is True


def test_report_json_round_trip(capsys):
    _, out = run(capsys, "report", "--A=1,2,0,-1", "--B=1,-1,0,2", "--c1", "1", "--c2", "-2", "--format", "json")
    assert Report.loads(out).dumps() == out
    assert json.dumps(json.loads(out), indent=2, sort_keys=True, ensure_ascii=False) + "\n" == out


def test_report_identity_b(capsys):
    code, out = run(capsys, "report", "--A", "1,0,0,1", "--B", "1,0,0,1", "--c1", "5", "--c2", "5", "--format", "json")
    assert code == 4 and json.loads(out)["status"] == "unsupported"
    code, out = run(capsys, "report", "--A", "1,1,0,1", "--B", "1,0,0,1", "--c1", "5", "--c2", "5", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["case"]["label"] == "I" and data["mf"]["value"] == 0


def test_report_validation_failure(capsys):
    code, out = run(capsys, "report", "--A", "2,0,0,1", "--B", "1,0,0,1")
    assert code == 3 and "det(A) = 2" in out


def test_report_unsupported_case(capsys):
    code, out = run(capsys, "report", "--A=-1,0,0,-1", "--B", "1,0,0,3", "--c1", "1")
    assert code == 4 and "not covered" in out


def test_report_text(capsys):
    code, out = run(capsys, "report", "--A", "1,0,0,1", "--B", "1,1,0,-1", "--c1", "1", "--c2", "1")
    assert code == 0
    assert "N(F) = 3" in out and "⊗" in out and "3 circle(s)" in out


def test_malformed_flags_exit_with_validation_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["report", "--A", "1,0,0", "--B", "1,0,0,1"])
    assert exc.value.code == 3


def test_sweep_square(capsys):
    code, out = run(capsys, "sweep", "--family", "square", "--c1=-3:3", "--b4=-2,0,2,3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["summary"]["mismatches"] == [] and data["summary"]["points"] == 28
    keys = [(r["c1"], r["c2"], r["b3"], r["b4"]) for r in data["rows"]]
    assert keys == sorted(keys)


def test_sweep_triangulated_parallel(capsys):
    code, out = run(capsys, "sweep", "--family", "triangulated", "--c1=-3:3", "--c2=-3:3", "--jobs", "2", "--format", "jsonl")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(rows) == 49
    assert all(r["nielsen"] == r["circles"] == r["mf"] == abs(2 * r["c1"] + r["c2"]) for r in rows)


def test_sweep_empty_range(capsys):
    code, out = run(capsys, "sweep", "--c1=", "--format", "json")
    assert code == 0 and json.loads(out)["rows"] == []


def test_sweep_general_text(capsys):
    code, out = run(capsys, "sweep", "--family", "general", "--c1=0:1", "--c2=0:1", "--b3=0:2", "--b4=1,3")
    assert code == 0 and "mismatches" in out


def test_dump_model(capsys):
    code, out = run(capsys, "dump-model", "--model", "triangulated", "--c1", "1", "--c2", "1")
    data = json.loads(out)
    assert code == 0 and data["cells"] == {"0": 4, "1": 12, "2": 8}
    code, out = run(capsys, "dump-model", "--format", "text")
    assert "partial1" in out


def test_classify(capsys):
    code, out = run(capsys, "classify", "--A=1,2,0,-1", "--B=1,-1,0,2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["label"] == "III" and data["listed_family"]
    code, _ = run(capsys, "classify", "--A", "2,0,0,1", "--B", "1,0,0,1")
    assert code == 3


def test_parsers():
    assert parse_matrix("1, 2,3,-4").flat() == (1, 2, 3, -4)
    assert parse_range("-1:1") == [-1, 0, 1]
    assert parse_range("4") == [4]
    assert parse_range("") == []


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "torus_nielsen.cli", "classify", "--A", "1,0,0,1", "--B", "1,0,0,3"],
                          capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0 and "label: II" in proc.stdout
