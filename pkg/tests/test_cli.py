import json
import subprocess
import sys
from pathlib import Path

import pytest

from dagcat import __version__
from dagcat.cli import main

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_version(capsys):
    code, out, _ = run(capsys, "version")
    assert code == 0 and out.strip() == f"dagcat {__version__}"


def test_check_pass(capsys):
    code, rep = report(capsys, "check", DATA / "basis2.json", "--laws", "monoid,frobenius,special")
    assert code == 0 and rep["ok"]
    assert [c["law"] for c in rep["checks"]] == ["monoid", "frobenius", "special"]


def test_check_fail_prints_witness(capsys):
    code, rep = report(capsys, "check", DATA / "dualnumbers.json", "--laws", "frobenius")
    assert code == 1
    (c,) = rep["checks"]
    assert not c["ok"] and "lhs" in c["witness"] and c["residual"] == 1.0


def test_check_malformed(capsys):
    code, out, err = run(capsys, "check", DATA / "malformed.json")
    assert code == 2 and out == "" and "line 4" in err


def test_check_schema_error(capsys):
    code, _, err = run(capsys, "check", DATA / "bad-schema.json")
    assert code == 2 and "$.mult.entries" in err


def test_check_unknown_law(capsys):
    code, _, err = run(capsys, "check", DATA / "basis2.json", "--laws", "fem")
    assert code == 2 and "do not apply" in err


@pytest.mark.parametrize("name, code", [
    ("z2-monoid.json", 0),
    ("interval.json", 1),
    ("pauli-x.json", 0),
    ("phase-s.json", 1),
    ("swap-rel.json", 0),
    ("projectors-computational.json", 0),
    ("projectors-nonselfadjoint.json", 1),
    ("algebra-computational.json", 0),
    ("algebra-nonselfadjoint.json", 1),
])
def test_check_kinds(capsys, name, code):
    got, rep = report(capsys, "check", DATA / name)
    assert got == code and rep["ok"] == (code == 0)


def test_interval_fails_only_commutativity(capsys):
    _, rep = report(capsys, "check", DATA / "interval.json")
    assert [c["law"] for c in rep["checks"] if not c["ok"]] == ["commutative"]


def test_text_format(capsys):
    code, out, _ = run(capsys, "check", DATA / "basis2.json", "--laws", "special")
    assert code == 0
    assert "PASS special: m∘m† = id" in out and out.endswith("result: pass\n")


@pytest.mark.parametrize("argv, code", [
    (["demo", "em-vs-fem", "--u", "pauli-x"], 0),
    (["demo", "em-vs-fem", "--u", "phase-pi/4"], 1),
    (["demo", "em-vs-fem", "--u", str(DATA / "phase-s.json")], 1),
    (["demo", "groupoid", "--group", "interval"], 0),
    (["demo", "groupoid", "--group", str(DATA / "s3.json")], 0),
    (["demo", "measurement", "--projectors", "nonselfadjoint"], 0),
    (["demo", "nat-monad", "--window", "64"], 0),
    (["demo", "counterexample", "--group", "z3"], 0),
    (["demo", "cayley-theorem", "--monoid", "dualnumbers"], 0),
    (["demo", "cayley-theorem", "--monoid", str(DATA / "z2-monoid.json")], 0),
    (["demo", "monad-equivalence", "--monoid", "s3"], 0),
    (["demo", "monad-equivalence", "--monoid", "dualnumbers", "--dims", "2"], 0),
])
def test_demo_exit_codes(capsys, argv, code):
    got, rep = report(capsys, *argv)
    assert got == code


@pytest.mark.parametrize("argv", [
    ["demo", "em-vs-fem", "--u", "hadamard"],
    ["demo", "counterexample", "--group", "trivial"],
    ["demo", "counterexample", "--group", "interval"],
    ["demo", "nat-monad", "--window", "3"],
    ["demo", "monad-equivalence", "--dims", "0"],
    ["demo", "em-vs-fem", "--u", str(DATA / "basis2.json")],
    ["demo", "measurement", "--projectors", str(DATA / "missing.json")],
])
def test_demo_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("error:")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["demo", "no-such-demo"])
    assert exc.value.code == 2


def test_counterexample_witness(capsys):
    _, rep = report(capsys, "demo", "counterexample", "--group", "z2")
    assert rep["unit_tensor_unit"] == [["∗", ["0", "0"]]]
    assert rep["comult_after_unit"] == [["∗", ["0", "0"]], ["∗", ["1", "1"]]]


def test_nat_monad_report(capsys):
    _, rep = report(capsys, "demo", "nat-monad", "--window", "64")
    assert rep["violations"] == 0 and rep["coverage"] == 65


def test_em_vs_fem_report(capsys):
    _, rep = report(capsys, "demo", "em-vs-fem", "--u", "phase-pi/2")
    flags = {c["law"]: c["ok"] for c in rep["checks"]}
    assert flags == {"base_frobenius": True, "em": True, "fem": True, "fem_iff_self_adjoint": False}


def test_tolerance_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("DAGCAT_TOL", "0.25")
    _, rep = report(capsys, "check", DATA / "basis2.json")
    assert rep["tolerance"] == 0.25
    monkeypatch.setenv("DAGCAT_TOL", "loose")
    code, _, err = run(capsys, "check", DATA / "basis2.json")
    assert code == 2 and "DAGCAT_TOL" in err


def test_negative_tolerance(capsys):
    code, _, _ = run(capsys, "check", DATA / "basis2.json", "--tol", "-1")
    assert code == 2


def test_module_entry_point_is_byte_stable():
    argv = [sys.executable, "-m", "dagcat", "demo", "monad-equivalence", "--monoid", "z2", "--format", "json"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and json.loads(first)["ok"]
