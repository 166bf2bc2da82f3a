import json
import subprocess
import sys

import pytest

from spslab.cli import main
from spslab.io import dumps


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def bad_files(tmp_path, fixtures):
    doc = json.loads(dumps(fixtures["CBIT"]))
    files = {}
    broken = dict(doc, mu=[dict(doc["mu"][0], value="1.1")] + doc["mu"][1:])
    files["bad_mu"] = broken
    files["no_bottom"] = {k: v for k, v in doc.items() if k != "bottom"}
    files["unknown_prop"] = dict(doc, actual=dict(doc["actual"], p=["zz"]))
    files["not_a_system"] = dict(doc, actual={"p": ["I"], "q": ["I"]})
    out = {}
    for name, body in files.items():
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(body))
        out[name] = str(path)
    path = tmp_path / "broken.json"
    path.write_text("{")
    out["broken"] = str(path)
    return out


def test_validate_ok(capsys):
    code, out, _ = run(capsys, "validate", "fixture:MO2")
    doc = json.loads(out)
    assert code == 0
    assert doc["schema"] == "spslab-report/1"
    assert doc["instance"]["digest_kind"] == "canonical"
    assert "timing" not in doc


@pytest.mark.parametrize("name, code", [("bad_mu", 2), ("no_bottom", 2), ("broken", 2),
                                        ("unknown_prop", 1), ("not_a_system", 1)])
def test_exit_codes(capsys, bad_files, name, code):
    assert run(capsys, "validate", bad_files[name])[0] == code


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "validate", str(tmp_path / "nope.json"))
    assert code == 2 and "no such file" in err


def test_budget_exit_code(capsys):
    code, out, _ = run(capsys, "report", "fixture:FANO", "--all", "--budget", "20")
    assert code == 3
    assert json.loads(out)["budget_exceeded"]


def test_report_sections(capsys):
    code, out, _ = run(capsys, "report", "fixture:CBIT", "--all")
    doc = json.loads(out)
    assert code == 0
    assert set(doc["sections"]) >= {"core", "closure", "geometry", "sectors", "classical", "certificates"}
    assert doc["sections"]["sectors"]["count"] == 2


def test_timing_is_opt_in(capsys):
    _, out, _ = run(capsys, "validate", "fixture:CBIT", "--timing")
    assert "timing" in json.loads(out)


def test_close(capsys):
    _, out, _ = run(capsys, "close", "fixture:MO2", "--set", "p,q")
    body = json.loads(out)["sections"]["set p,q"]
    assert body["lambda"] == ["p", "p'", "q", "q'"]
    code, _, _ = run(capsys, "close", "fixture:MO2", "--set", "p,zz")
    assert code == 2


def test_text_and_dot_formats(capsys, tmp_path):
    _, out, _ = run(capsys, "axioms", "fixture:MO2", "--format", "text")
    assert "A: holds" in out
    _, out, _ = run(capsys, "report", "fixture:MO2", "--format", "dot")
    assert out.startswith("digraph") or "digraph" in out
    path = tmp_path / "fano.dot"
    assert run(capsys, "geometry", "fixture:FANO", "--dot", str(path))[0] == 0
    assert "graph" in path.read_text()


def test_certify(capsys):
    code, out, _ = run(capsys, "certify", "fixture:FANO", "--structure", "orthosystem")
    assert code == 0
    doc = json.loads(out)
    assert "precondition-unmet" in json.dumps(doc)
    assert run(capsys, "certify", "fixture:MO2", "--structure", "bogus")[0] == 2


def test_generate_round_trip(capsys, tmp_path):
    path = tmp_path / "pg.json"
    assert run(capsys, "generate", "--pg", "2", "3", "--out", str(path))[0] == 0
    code, out, _ = run(capsys, "geometry", str(path))
    assert code == 0
    _, out, _ = run(capsys, "generate", "--pg", "3", "2", "--form", "identity")
    assert json.loads(out)["format"] == "spslab-instance/1"


def test_search_and_check_witness(capsys, tmp_path):
    code, out, _ = run(capsys, "search", "A-implies-2-MSP", "--max-states", "3", "--no-fixtures")
    doc = json.loads(out)
    assert code == 0 and doc["result"]["instance"] == "n3-1"
    inst = tmp_path / "inst.json"
    inst.write_text(json.dumps(doc["result"]["instance_data"]))
    wit = tmp_path / "report.json"
    _, out, _ = run(capsys, "axioms", str(inst), "--msp", "2")
    wit.write_text(out)
    code, out, _ = run(capsys, "check-witness", str(inst), str(wit))
    assert code == 0 and json.loads(out)["reproduced"]
    assert run(capsys, "check-witness", "fixture:MO2", str(wit))[0] == 1


def test_search_list(capsys):
    code, out, _ = run(capsys, "search", "--list")
    assert code == 0 and "theorem-1" in out
    assert run(capsys, "search", "nope")[0] == 2


def test_console_script_is_byte_identical():
    cmd = [sys.executable, "-m", "spslab.cli", "report", "fixture:LINE3", "--all"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
