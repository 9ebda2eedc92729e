import json
import subprocess
import sys

import pytest

from wdwb import build_weidner
from wdwb.cli import main, run_command
from wdwb.serialization import dumps, parameter_to_json


@pytest.fixture()
def weidner_files(tmp_path):
    p1, p2 = build_weidner(3)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    a.write_text(dumps(parameter_to_json(p1)))
    b.write_text(dumps(parameter_to_json(p2)))
    return str(a), str(b)


def _write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def _sp2(tmp_path):
    blocks = _write(tmp_path, "blocks.json", {"blocks": [{"r": 2}]})
    code, text, _ = run_command(["build-blocks", "-p", blocks])
    assert code == 0
    return _write(tmp_path, "sp2.json", json.loads(text))


def test_weidner_verify_out_file(tmp_path):
    out = tmp_path / "r.json"
    assert main(["weidner-verify", "--n", "3", "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert [c["status"] for c in report["checks"]] == ["pass"] * 5
    assert all(c["paper_ref"] for c in report["checks"])
    assert {"case", "n", "checks", "seed", "elapsed"} <= set(report)


def test_reports_byte_identical(tmp_path, weidner_files):
    runs = [run_command(["conj-global", "-p", weidner_files[0], "-q", weidner_files[1], "--seed", "5"])[1]
            for _ in range(2)]
    assert runs[0] == runs[1]
    runs = [run_command(["weidner-verify", "--n", "3"])[1] for _ in range(2)]
    assert runs[0] == runs[1]


def test_conj_exit_codes(weidner_files):
    a, b = weidner_files
    code, text, _ = run_command(["conj-global", "-p", a, "-q", b])
    assert code == 2
    report = json.loads(text)
    assert report["status"] == "NotConjugate" and report["certificate"]
    assert report["seed"] == 0 and report["budget"] == 200
    assert run_command(["conj-local", "-p", a, "-q", b])[0] == 0
    assert run_command(["conj-global", "-p", a, "-q", a])[0] == 0


def test_genericity_and_lfactor(tmp_path):
    sp2 = _sp2(tmp_path)
    code, text, _ = run_command(["genericity", "-p", sp2])
    assert code == 0
    r = json.loads(text)
    assert (r["generic"], r["via_l"], r["via_orbit"]) == (True, True, True)
    code, text, _ = run_command(["lfactor", "-p", sp2])
    assert code == 0 and json.loads(text)["inverse_roots"] == ["q^(-1/2)"]
    code, text, _ = run_command(["semisimplify", "-p", sp2])
    assert sorted(json.loads(text)["frobenius_eigenvalues"]) == ["q^(-1/2)", "q^(1/2)"]
    code, text, _ = run_command(["monodromy", "-p", sp2])
    assert json.loads(text)["dimension"] == 1


def test_misc_subcommands(weidner_files):
    a, b = weidner_files
    code, text, _ = run_command(["validate", "-p", a])
    assert code == 0 and json.loads(text)["valid"]
    code, text, _ = run_command(["polar", "-p", a])
    assert code == 0 and json.loads(text)["levi_dimension"] == 15
    code, text, _ = run_command(["trace", "-p", a, "--rep", "ext(2)"])
    assert code == 0 and len(json.loads(text)["traces"]) == 16
    code, text, _ = run_command(["twist-suite", "-p", a, "-q", b, "--twist-dim-max", "1"])
    assert code == 0 and json.loads(text)["equivalent_under_all_twists"]
    code, text, _ = run_command(["weidner-build", "--n", "4"])
    assert code == 0 and len(json.loads(text)["phi1"]["frobenius_image"]) == 8


def test_scan_subcommand():
    code, text, _ = run_command(["scan", "--target", "SL3"])
    assert code == 0
    r = json.loads(text)
    assert r["pairs_found"] == 0 and r["budget"] == 500 and r["elapsed"] is None


def test_input_errors(tmp_path):
    assert run_command(["frobnicate"])[0] == 1
    assert run_command(["validate"])[0] == 1
    assert run_command(["validate", "-p", str(tmp_path / "missing.json")])[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, text, _ = run_command(["validate", "-p", str(bad)])
    assert code == 1 and json.loads(text)["error"] == "input"
    assert run_command(["weidner-verify", "--n", "2"])[0] == 1
    assert run_command(["validate", "--bogus-flag"])[0] == 1
    assert run_command(["validate", "-p", _write(tmp_path, "x.json", {"target": "SO4"})])[0] == 1


def test_validate_failure_exit(tmp_path):
    data = {"target": "GL2", "frobenius_image": [["q^(1/2)", "0"], ["0", "q^(-1/2)"]],
            "N": [["0", "1"], ["0", "0"]]}
    code, text, _ = run_command(["validate", "-p", _write(tmp_path, "bad.json", data)])
    assert code == 2 and not json.loads(text)["valid"]


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "wdwb.cli", "weidner-verify", "--n", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["passed"]
