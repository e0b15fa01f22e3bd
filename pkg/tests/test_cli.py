import json
import shutil
import subprocess
import sys
from importlib.resources import files

import pytest

from corrcat.bundle import save_bundle
from corrcat.cli import main, run

from test_bundle import full_bundle

SHIPPED = str(files("corrcat").joinpath("data/d12.bundle"))


def call(*argv):
    code, out, _ = run(list(argv))
    return code, out


@pytest.mark.parametrize("argv, code, verdict", [
    (["segal", "--cat", "D12", "--n", "2"], 0, "yes"),
    (["segal", "--fixture", "finset3"], 1, "no"),
    (["classify-fib", "--fib", "span:D12", "--expect", "bivariant,beck_chevalley"], 0, "yes"),
    (["classify-fib", "--fib", "arrow:d12", "--expect", "bifibration"], 0, "yes"),
    (["classify-fib", "--fib", "span:D12", "--expect", "bifibration"], 1, "no"),
    (["classify-fib", "--fib", "unstraighten:non-adjointable"], 1, "no"),
    (["groth", "--functor", "hom"], 0, "yes"),
    (["dual", "--cat", "D12", "--span", "12,2,12"], 0, "yes"),
    (["zigzag", "--cat", "d12"], 0, "yes"),
    (["adjoint", "--cat", "z2", "--arrow", "s"], 0, "yes"),
    (["adjoint", "--cat", "d12", "--span", "4,2,6"], 0, "yes"),
    (["pullback", "--cat", "d12", "--cospan", "4->12,6->12"], 0, "yes"),
    (["pullback", "--fixture", "finset3", "--cospan", "2->1:00,2->1:00"], 1, "no"),
    (["compose-spans", "--cat", "d12", "--span", "2,1,3", "--span", "3,3,12"], 0, "yes"),
    (["compose-spans", "--fixture", "finset3", "--span", "2->2:01,2->1:00",
      "--span", "2->1:00,2->2:01"], 1, "no"),
    (["bc", "--cat", "d12"], 0, "yes"),
    (["bc-square", "--cat", "walking-square"], 0, "yes"),
    (["validate", "--fixture", "meet-translations"], 0, "yes"),
    (["validate", "--fixture", "broken-interchange"], 1, "no"),
])
def test_verdicts_and_exit_codes(argv, code, verdict):
    got, out = call(*argv)
    assert got == code, out
    assert out["verdict"] == verdict


def test_pullback_report():
    _, out = call("pullback", "--cat", "d12", "--cospan", "4->12,6->12")
    assert out["apex"] == 2
    assert out["projections"] == ["2->4", "2->6"]
    assert out["provenance"] == ["fixture:D12"]


def test_dual_reports_the_reverse_span():
    _, out = call("dual", "--cat", "D12", "--span", "12,2,12")
    assert out["iso_apex_map"] == "2->2"
    assert out["dual"] == out["reverse"]


def test_segal_certificate_for_finset():
    _, out = call("segal", "--fixture", "finset3")
    assert out["certificate"]["kind"] == "non-extendable spine datum"


@pytest.mark.parametrize("argv", [
    ["segal", "--cat", "nope"],
    ["pullback", "--cat", "d12", "--cospan", "4->12"],
    ["pullback", "--cat", "d12", "--cospan", "2->4,3->6"],
    ["dual", "--cat", "finset3", "--span", "2,2,2"],
    ["classify-fib", "--fib", "weird:d12"],
    ["classify-fib", "--fib", "span:d12", "--expect", "shiny"],
    ["suite", "--criteria", "99"],
    ["validate", "--bundle", "/nonexistent/file.yaml"],
])
def test_input_errors_exit_2(argv):
    code, out = call(*argv)
    assert code == 2
    assert out["error"] in ("input error", "bundle error")


def test_caps_exit_3():
    code, out = call("segal", "--cat", "d12", "--n", "5")
    assert code == 3 and out["error"] == "cap exceeded"
    code, _ = call("segal", "--cat", "d12", "--max-objects", "4")
    assert code == 3
    code, _ = call("segal", "--cat", "walking-arrow", "--n", "4", "--max-level", "3")
    assert code == 3


def test_bundle_commands(tmp_path):
    path = tmp_path / "b.yaml"
    save_bundle(full_bundle(), path)
    code, out = call("validate", "--bundle", str(path))
    assert code == 0 and "M" in out["checked"]
    assert call("bc", "--bundle", str(path), "--square", "unit")[0] == 0
    code, out = call("bc", "--bundle", str(path), "--square", "stuck")
    assert code == 1
    assert out["witness"] == ["vertical", "missing right adjoint of the left edge"]
    code, out = call("dual", "--bundle", str(path), "--cat", "D12", "--span", "S")
    assert code == 0 and out["span"]["apex"] == 2


def test_broken_bundle_exits_2(tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text("categories:\n  c:\n    objects: [a]\n"
                    "    morphisms: [{id: i1, src: a, tgt: a}, {id: f, src: a, tgt: a}]\n"
                    "    identities: {a: i1}\n    composition: [[f, f, f], [i1, f, i1]]\n")
    code, out = call("validate", "--bundle", str(path))
    assert code == 2 and "('i1', 'f')" in out["detail"]


def test_shipped_bundle_validates():
    code, out = call("validate", "--bundle", SHIPPED)
    assert code == 0 and out["checked"] == ["D12"]


def test_report_file_and_summary(tmp_path, capsys):
    path = tmp_path / "r.json"
    assert main(["suite", "--criteria", "1,2", "--report", str(path)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "suite: yes"
    assert lines[1].startswith("  criterion 1 (pullback oracle equivalence): pass")
    data = json.loads(path.read_text())
    assert sorted(data["criteria"]) == ["1", "2"]
    assert "seconds" not in data


def test_timing_is_opt_in():
    _, out = call("zigzag", "--cat", "d12", "--object", "6", "--timing")
    assert "seconds" in out


def test_stdout_is_sorted_json(capsys):
    main(["pullback", "--cat", "d12", "--cospan", "4->12,6->12"])
    text = capsys.readouterr().out
    data = json.loads(text)
    assert text == json.dumps(data, sort_keys=True, indent=2) + "\n"


def test_module_entry_point():
    exe = shutil.which("corrcat")
    cmd = [exe] if exe else [sys.executable, "-m", "corrcat.cli"]
    r = subprocess.run(cmd + ["segal", "--cat", "finset3"], capture_output=True, text=True)
    assert r.returncode == 1
    assert json.loads(r.stdout)["verdict"] == "no"
