import json
import subprocess
import sys
from pathlib import Path

import pytest

from prodcoeq.cli import main, run

DATA = Path(__file__).resolve().parent.parent / "data"


def d(name):
    return str(DATA / name)


def _report(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_report_shape(capsys):
    code, rep = _report(capsys, ["coeq", "--pair", d("pair-z2.json")])
    assert code == 0
    assert set(rep) == {"command", "inputs", "result", "sizes", "elapsed_ms"}
    assert rep["result"]["congruence"] == [[0, 2], [1, 3]]


def test_deterministic_apart_from_timing(capsys):
    argv = ["decide-p", "z2^2"]
    _, a = _report(capsys, argv)
    _, b = _report(capsys, argv)
    a.pop("elapsed_ms"), b.pop("elapsed_ms")
    assert a == b


def test_identity_coequalizer(capsys):
    code, rep = _report(capsys, ["coeq", "--pair", d("pair-identity-x.json"), "--check-universal",
                                 "-a", d("sub-x.json")])
    assert code == 0 and rep["result"]["identifies_nothing"]
    assert rep["result"]["universal_property_violations"] == []


@pytest.mark.parametrize("argv, code", [
    (["is-normal", "--map", d("map-x-y-collapse.json")], 1),
    (["decide-p", "z2"], 0),
    (["decide-p", "pointed-set-2"], 1),
    (["decide-local-np", "lattice2"], 0),
    (["decide-local-np", "set-2"], 1),
    (["find-term", "--kind", "malcev", "z2"], 0),
    (["find-term", "--kind", "majority", "z2"], 1),
    (["find-term", "--kind", "subtraction", "builtin:sub-x"], 0),
    (["check-local-instance", "--pair1", d("point-pair-z2.json"),
      "--pair2", d("point-pair-z2.json")], 0),
    (["pt-product", "--point1", d("point-z2-split.json"), "--point2", d("point-z2-split.json")], 0),
    (["pt-coeq", "--pair", d("point-pair-z2.json")], 0),
    (["cokernel", "--map", d("map-x-y-collapse.json")], 0),
    (["check-p-instance", "--pair1", d("pair-z2.json"), "--pair2", d("pair-identity-x.json")], 2),
    (["check-p-instance", "--pair1", d("pair-z2.json"), "--pair2", d("pair-z2.json")], 0),
    (["congruence", "sub-x", "--pairs", "[[1, 0]]", "--trace"], 0),
])
def test_exit_codes(capsys, argv, code):
    assert main(argv) == code


@pytest.mark.parametrize("argv", [
    ["decide-p", "no-such-algebra"],
    ["decide-p", "set-2"],
    ["is-normal", "--map", d("map-x-y.json")],
    ["is-normal", "--map", d("missing.json")],
    ["congruence", "z2", "--pairs", "[[0, 7]]"],
    ["congruence", "z2", "--pairs", "not json"],
    ["decide-p", "z2^2", "--max-free-size", "2"],
    ["verify-paper-counterexample", "--permute-x", "0,0,1"],
])
def test_input_errors(capsys, argv):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    [], ["frobnicate"], ["decide-p", "z2", "--max-free-size", "0"], ["find-term", "z2"]])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
    assert "error" in capsys.readouterr().err


def test_negative_witnesses_validate(capsys, tmp_path):
    cases = [["is-normal", "--map", d("map-x-y-collapse.json")],
             ["decide-p", "pointed-set-2"],
             ["decide-p", "sub-x"],
             ["decide-local-np", "set-2"],
             ["find-term", "--kind", "majority", "z2"],
             ["verify-paper-counterexample"]]
    for argv in cases:
        code, rep = _report(capsys, argv)
        assert code == 1 and "witness" in rep, argv
        path = tmp_path / "w.json"
        path.write_text(json.dumps(rep))
        assert main(["validate-witness", str(path)]) == 0, argv
        assert json.loads(capsys.readouterr().out)["result"]["confirmed"]


def test_emit_terms_and_validate(capsys, tmp_path):
    out = tmp_path / "terms.json"
    code, rep = _report(capsys, ["decide-p", "lattice2-pointed", "--emit-terms", str(out)])
    assert code == 0 and rep["terms"]["terms"]["kind"] == "P"
    assert main(["validate-witness", str(out)]) == 0


def test_tampered_witness_is_refuted(capsys, tmp_path):
    _, rep = _report(capsys, ["is-normal", "--map", d("map-x-y-collapse.json")])
    rep["witness"]["pair"] = [0, 0]
    path = tmp_path / "w.json"
    path.write_text(json.dumps(rep))
    assert main(["validate-witness", str(path)]) == 1


def test_report_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, rep = run(["find-term", "--kind", "subtraction", "z2", "--report", str(path)])
    assert code == 0 and capsys.readouterr().out == ""
    assert json.loads(path.read_text())["result"]["found"]


def test_counterexample_verb_reports_each_claim(capsys):
    code, rep = _report(capsys, ["verify-paper-counterexample", "--permute-x", "2,0,1"])
    assert code == 1
    passed = [a["passed"] for a in rep["result"]["assertions"]]
    assert passed == [False, False, False, True, True]
    assert rep["result"]["corrected_instance"]["passed"]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "prodcoeq.cli", "decide-p", "z2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"] == "holds"
