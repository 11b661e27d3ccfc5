import csv
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from bkcone.cli import MISMATCH, OK, USAGE, main, parse_rat, rat


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def _schema(name):
    return json.loads(resources.files("bkcone.schemas").joinpath(name).read_text())


def test_no_arguments_is_a_usage_error(capsys):
    code, _, err = run(capsys)
    assert code == USAGE and "usage" in err


@pytest.mark.parametrize("argv", [
    ["eigencone"], ["bogus"], ["eigencone", "gen"], ["eigencone", "gen", "--type", "Q7"],
    ["eigencone", "gen", "--type", "A2", "--criterion", "nope"], ["bk", "table", "--type", "B2", "--parabolic", "9"],
    ["lr", "--lam", "1,x", "--mu", "1"], ["horn", "set", "--r", "3", "--n", "3"],
    ["tensor", "satscan", "--type", "C2", "--workers", "0"], ["suite", "--only", "99"],
    ["bk", "check", "--words", "r"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == USAGE


def test_help_exits_cleanly(capsys):
    assert run(capsys, "--help")[0] == OK


def test_generate_a2(capsys):
    code, out, _ = run(capsys, "eigencone", "gen", "--type", "A2")
    assert code == OK
    body = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert len(body) == 12
    assert "12 inequalities (6 + 6)" in out


def test_output_is_byte_identical(capsys):
    first = run(capsys, "eigencone", "gen", "--type", "B3", "--format", "json")[1]
    second = run(capsys, "eigencone", "gen", "--type", "B3", "--format", "json")[1]
    assert first == second


@pytest.mark.parametrize("label", ["A2", "G2", "C3"])
def test_generated_json_matches_schema(capsys, label):
    code, out, _ = run(capsys, "eigencone", "gen", "--type", label, "--format", "json")
    assert code == OK
    jsonschema.validate(json.loads(out), _schema("eigencone_system.schema.json"))


def test_generated_csv(capsys, tmp_path):
    target = tmp_path / "b2.csv"
    assert run(capsys, "eigencone", "gen", "--type", "B2", "--format", "csv", "--out", str(target))[0] == OK
    rows = list(csv.DictReader(target.open()))
    assert len(rows) == 18 and set(rows[0]) == {"parabolic", "words", "covector"}


@pytest.mark.parametrize("label,parabolic", [("B2", "2"), ("A3", "borel"), ("C3", "1,3")])
def test_schubert_dump_schema(capsys, label, parabolic):
    code, out, _ = run(capsys, "schubert", "dump", "--type", label, "--parabolic", parabolic, "--format", "json")
    assert code == OK
    jsonschema.validate(json.loads(out), _schema("schubert_table.schema.json"))


@pytest.mark.parametrize("basis", ["epsilon", "X"])
def test_bk_table_schema(capsys, basis):
    code, out, _ = run(capsys, "bk", "table", "--type", "B3", "--parabolic", "2", "--basis", basis,
                       "--format", "json")
    assert code == OK
    jsonschema.validate(json.loads(out), _schema("deformed_table.schema.json"))


def test_bk_table_matches_reference(capsys):
    code, out, _ = run(capsys, "bk", "table", "--type", "B2", "--parabolic", "2", "--diff-golden")
    assert code == OK
    assert "3/3 cells match" in out


def test_bk_table_reports_misprint(capsys):
    code, out, _ = run(capsys, "bk", "table", "--type", "G2", "--parabolic", "1", "--diff-golden")
    assert code == MISMATCH
    assert "consistent with a misprint" in out


def test_diff_golden_needs_epsilon_basis(capsys):
    assert run(capsys, "bk", "table", "--type", "B2", "--parabolic", "2", "--basis", "X", "--diff-golden")[0] == USAGE


def test_bk_check_all_tables(capsys):
    code, out, _ = run(capsys, "bk", "check")
    assert code == MISMATCH
    assert "174/176 cells match" in out


def test_bk_check_single_table(capsys):
    assert run(capsys, "bk", "check", "--table", "C3/P2")[0] == OK


def test_bk_check_words(capsys):
    code, out, _ = run(capsys, "bk", "check", "--type", "B2", "--parabolic", "borel", "--words", "rsrs,rs,sr",
                       "--format", "json")
    assert code == OK
    data = json.loads(out)
    assert data["codimension"] == data["dim"] == 4
    assert data["cup"] == 1 and data["exponents"] == [0, 0]
    assert data["levi_movable"] and data["bk0"] == 1


def test_bk_check_identity_word(capsys):
    code, out, _ = run(capsys, "bk", "check", "--type", "B2", "--parabolic", "2", "--words", "e,rs,s",
                       "--format", "json")
    assert code == OK
    data = json.loads(out)
    assert data["words"][0] == "e" and data["cup"] is None and data["bk0"] == 0


def test_bk_check_rejects_non_reduced_words(capsys):
    assert run(capsys, "bk", "check", "--type", "B2", "--parabolic", "1", "--words", "rr,e")[0] == USAGE


def _points_file(tmp_path, data):
    path = tmp_path / "pts.json"
    path.write_text(json.dumps(data))
    return str(path)


def test_member_with_expectations(capsys, tmp_path):
    inside = _points_file(tmp_path, {"points": [[1, 0], [0, 1], [0, 0]]})
    assert run(capsys, "eigencone", "member", "--type", "A2", "--points", inside, "--expect", "in")[0] == OK
    assert run(capsys, "eigencone", "member", "--type", "A2", "--points", inside, "--expect", "out")[0] == MISMATCH
    outside = _points_file(tmp_path, {"points": [[1, 0], [0, 0], [0, 0]]})
    code, out, _ = run(capsys, "eigencone", "member", "--type", "A2", "--points", outside)
    assert code == OK and "outside" in out


def test_member_accepts_rationals(capsys, tmp_path):
    pts = _points_file(tmp_path, {"kind": "cartan", "tuples": [[["1/2", 0], [0, "1/2"], [0, 0]]]})
    code, out, _ = run(capsys, "eigencone", "member", "--type", "A2", "--points", pts, "--format", "json")
    assert code == OK
    res = json.loads(out)["results"][0]
    assert res["points"][0] == ["1/2", 0] and res["member"]


def test_member_bad_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "eigencone", "member", "--type", "A2", "--points", str(bad))[0] == USAGE
    neg = _points_file(tmp_path, {"points": [[-1, 0], [0, 0], [0, 0]]})
    assert run(capsys, "eigencone", "member", "--type", "A2", "--points", neg)[0] == USAGE


def test_facets(capsys):
    code, out, _ = run(capsys, "eigencone", "facets", "--type", "B2")
    assert code == OK and "18/18" in out


def test_golden_list(capsys):
    code, out, _ = run(capsys, "eigencone", "golden", "--type", "C3")
    assert code == OK and "equal to reference list" in out


def test_horn_set_and_member(capsys, tmp_path):
    code, out, _ = run(capsys, "horn", "set", "--r", "2", "--n", "4", "--format", "json")
    assert code == OK and len(json.loads(out)["triples"]) == 21
    spectra = tmp_path / "h.json"
    spectra.write_text(json.dumps({"a": [1, 0], "b": ["1/2", "-1/2"], "c": ["3/2", "-1/2"]}))
    assert run(capsys, "horn", "member", "--file", str(spectra), "--expect", "in")[0] == OK
    spectra.write_text(json.dumps({"a": [1, 0], "b": [1, 0], "c": [1, 0]}))
    assert run(capsys, "horn", "member", "--file", str(spectra), "--expect", "in")[0] == MISMATCH


def test_lr(capsys):
    assert run(capsys, "lr", "--lam", "2,1", "--mu", "2,1", "--nu", "3,2,1")[1] == "2\n"
    code, out, _ = run(capsys, "lr", "--lam", "1", "--mu", "1")
    assert code == OK and out == "2: 1\n1,1: 1\n"


def test_tensor_mult(capsys):
    code, out, _ = run(capsys, "tensor", "mult", "--type", "A1", "--lam", "2", "--mu", "1")
    assert code == OK and out == "1: 1\n3: 1\n"
    code, out, _ = run(capsys, "tensor", "mult", "--type", "G2", "--lam", "1,0", "--mu", "1,0", "--nu", "1,0",
                       "--format", "json")
    assert json.loads(out)["invariant_dim"] == 1


def test_satscan_csv(capsys, tmp_path):
    target = tmp_path / "c2.csv"
    code, _, _ = run(capsys, "tensor", "satscan", "--type", "C2", "--bound", "3", "--workers", "2",
                     "--out", str(target))
    assert code == OK
    rows = list(csv.DictReader(target.open()))
    assert set(rows[0]) == {"lam", "mu", "nu", "d", "invariant_dim"}
    first = [r for r in rows if (r["lam"], r["mu"], r["nu"]) == ("0,1", "0,1", "0,1")]
    assert [(r["d"], r["invariant_dim"]) for r in first] == [("1", "0"), ("2", "1"), ("3", "0"), ("4", "1")]


def test_satscan_without_restoring_multiplier_is_ok(capsys):
    code, out, _ = run(capsys, "tensor", "satscan", "--type", "G2", "--bound", "1", "--dmax", "3")
    assert code == OK and "restored at" in out


def test_rigidity(capsys):
    code, out, _ = run(capsys, "tensor", "rigidity", "--r", "2", "--bound", "3")
    assert code == OK and "0 violations" in out


def test_suite_subset(capsys):
    code, out, _ = run(capsys, "suite", "--only", "9,10")
    assert code == OK
    assert out.count("[PASS]") == 2 and "2/2 criteria passed" in out


def test_suite_seed_is_reproducible(capsys):
    first = run(capsys, "suite", "--only", "12", "--seed", "5")[1]
    second = run(capsys, "suite", "--only", "12", "--seed", "5")[1]
    strip = lambda text: [ln.rsplit(" (", 1)[0] for ln in text.splitlines()]
    assert strip(first) == strip(second) and "[PASS]" in first


def test_rational_helpers():
    assert rat(2) == 2 and rat("3/6") == "1/2"
    assert parse_rat("-2/4") == parse_rat(-0.5)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bkcone.cli", "lr", "--lam", "1", "--mu", "1", "--nu", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "1\n"
