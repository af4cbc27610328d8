import io
import json

import pytest

from qfctool.cli import parse_box, parse_monoid, run

QUADRANT = "(2,0);(0,2);(2,3);(3,2);(3,3)"


def call(*argv, fmt="json"):
    out, err = io.StringIO(), io.StringIO()
    code = run(["--format", fmt, *argv], out, err)
    text = out.getvalue()
    doc = json.loads(text) if fmt == "json" and text else None
    return code, doc, text, err.getvalue()


def test_qfc_three_five():
    code, doc, _, _ = call("decide", "qfc", "--monoid", "3,5")
    assert code == 0
    assert doc["verdict"]["certificate"]["kind"] == "GcdOne"
    assert {"verdict", "input", "timings", "budgets"} <= set(doc)


def test_qfc_two():
    code, doc, _, _ = call("decide", "qfc", "--monoid", "2")
    assert code == 1
    w = doc["verdict"]["witness"]
    assert (w["kind"], w["t"], w["m"]) == ("TorsionElement", [1], 2)


def test_gaps_quadrant_monoid():
    code, doc, _, _ = call("gaps", "--monoid", QUADRANT, "--box", "9")
    assert code == 0 and doc["status"] == "InfiniteEvidence"
    got = {tuple(e) for e in doc["elements"]}
    pattern = ({(2 * m + 1, 0) for m in range(5)} | {(0, 2 * m + 1) for m in range(5)}
               | {(m, 1) for m in range(1, 10)} | {(1, m) for m in range(1, 10)})
    assert got == pattern


def test_unknown_exit_code():
    code, doc, _, _ = call("decide", "pfc", "--monoid", "(1,0);(1,1);(1,2)")
    assert code == 2 and doc["verdict"]["answer"] == "Unknown"


def test_usage_errors():
    assert call("decide", "qfc")[0] == 64
    assert call("decide", "qfc", "--monoid", "3", "--algebra", "x1")[0] == 64
    assert call("frobnicate")[0] == 64
    assert call()[0] == 64


def test_input_errors():
    assert call("decide", "qfc", "--monoid", "(1,")[0] == 65
    assert call("decide", "qfc", "--algebra", "x1^^2")[0] == 65
    assert call("gaps", "--monoid", "3,5", "--box", "4:1")[0] == 65
    assert call("apery", "--monoid", "3,5", "--m", "4")[0] == 65
    assert call("decide", "qfc", "--input", "/nonexistent/file")[0] == 65


def test_frobenius_and_apery():
    code, doc, _, _ = call("frobenius", "--monoid", "3,5")
    assert code == 0 and doc["frobenius"] == 7 and doc["genus"] == 4
    code, doc, _, _ = call("frobenius", "--monoid", "4,6")
    assert code == 1 and doc["gcd"] == 2
    code, doc, _, _ = call("apery", "--monoid", "3,5", "--m", "3")
    assert doc["apery"] == [0, 10, 5]


def test_algebra_input_file(tmp_path):
    f = tmp_path / "a.txt"
    f.write_text("x1 + x2; x1^2; x1^3\n")
    code, doc, _, _ = call("decide", "qfc", "--input", str(f), "--effort", "2")
    assert code == 0 and doc["verdict"]["certificate"]["kind"] == "KeyLemmaWitness"
    g = tmp_path / "m.txt"
    g.write_text("3,5")
    assert call("decide", "qfc", "--input", str(g))[0] == 0


def test_text_format_has_fenced_block():
    code, _, text, _ = call("decide", "qfc", "--monoid", "3,5", fmt="text")
    assert code == 0 and "qfc: Yes" in text
    body = text.split("```json\n", 1)[1].rsplit("\n```", 1)[0]
    assert json.loads(body)["verdict"]["answer"] == "Yes"


def test_format_after_subcommand():
    out, err = io.StringIO(), io.StringIO()
    assert run(["decide", "qfc", "--monoid", "3,5", "--format", "json"], out, err) == 0
    json.loads(out.getvalue())


@pytest.mark.parametrize("argv", [
    ["decide", "qfc", "--monoid", "3,5"], ["decide", "qfc", "--monoid", "2"],
    ["decide", "pfc", "--monoid", "2,3"], ["decide", "fc", "--monoid", "1,-1"],
    ["decide", "retract", "--monoid", "(1,0);(-1,0)"], ["decide", "normal", "--monoid", "2,3"],
    ["decide", "qfc", "--algebra", "x1^2"], ["oracle", "fuzz", "--monoid", "2", "--box=-1:3"],
    ["gaps", "--monoid", "3,5", "--certify"],
])
def test_round_trip_through_verify(tmp_path, argv):
    code, _, text, _ = call(*argv, fmt="text")
    assert code in (0, 1)
    path = tmp_path / "doc.txt"
    path.write_text(text)
    vcode, vdoc, _, _ = call("certificate", "verify", str(path))
    assert vcode == 0 and vdoc["valid"] is True


def test_verify_rejects_tampering(tmp_path):
    _, doc, _, _ = call("decide", "qfc", "--monoid", "3,5")
    doc["verdict"]["certificate"]["combination"] = [1, 1]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    assert call("certificate", "verify", str(path))[0] == 1
    path.write_text("{")
    assert call("certificate", "verify", str(path))[0] == 65


def test_oracle_commands():
    code, doc, _, _ = call("oracle", "fuzz", "--monoid", "3,5", "--box=0:6")
    assert code == 2 and doc["report"]["counterexamples"] == []
    code, doc, _, _ = call("oracle", "witness-f2", "--poly", "x1^3 + x1")
    assert code == 0 and doc["shift"] == 1 and doc["valid"]
    assert call("oracle", "witness-f2", "--poly", "0")[0] == 65


def test_env_budget(monkeypatch):
    monkeypatch.setenv("QFC_ENUM_BUDGET", "50")
    assert call("gaps", "--monoid", QUADRANT, "--box", "9")[0] == 65
    monkeypatch.setenv("QFC_ENUM_BUDGET", "1000")
    code, doc, _, _ = call("gaps", "--monoid", QUADRANT, "--box", "9")
    assert code == 0 and doc["budgets"]["enum_budget"] == 1000


def test_grammar_helpers():
    assert parse_monoid("3, 5").generators == ((3,), (5,))
    assert parse_monoid("(1,-2); (0,3)").generators == ((1, -2), (0, 3))
    assert parse_box("9", 2) == ((0, 0), (9, 9))
    assert parse_box("-1:3", 1) == ((-1,), (3,))
    assert parse_box("0:2,-1:1", 2) == ((0, -1), (2, 1))


def test_main_module_runs():
    import subprocess
    import sys
    p = subprocess.run([sys.executable, "-m", "qfctool", "decide", "qfc", "--monoid", "2"],
                       capture_output=True, text=True)
    assert p.returncode == 1 and json.loads(p.stdout)["verdict"]["answer"] == "No"
