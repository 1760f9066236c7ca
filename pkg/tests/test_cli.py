import json
import re
import subprocess
import sys

import pytest

from roughmatroid.builtin import EXAMPLE_RELATION_TEXT
from roughmatroid.cli import main


@pytest.fixture
def ex_file(tmp_path):
    path = tmp_path / "ex35.rel"
    path.write_text(EXAMPLE_RELATION_TEXT, encoding="utf-8")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check(capsys, ex_file):
    code, out, _ = run(capsys, "check", "--relation", ex_file)
    assert code == 0
    assert "serial: true" in out and "transitive: true" in out
    code, out, _ = run(capsys, "check", "--relation", ex_file, "--format", "json")
    data = json.loads(out)
    assert data["universe"] == ["1", "2", "3", "4"]
    assert data["serial"] and data["transitive"] and not data["reflexive"]


def test_regular_json(capsys, ex_file):
    code, out, _ = run(capsys, "regular", "--relation", ex_file, "--format", "json")
    assert code == 0
    assert json.loads(out)["regular_sets"] == [[], ["4"], ["1", "3"], ["1", "2", "3", "4"]]


def test_lattice_formats(capsys, ex_file, tmp_path):
    code, out, _ = run(capsys, "lattice", "--relation", ex_file, "--format", "json")
    data = json.loads(out)
    assert data["atoms"] == [["4"], ["1", "3"]]
    assert [h["height"] for h in data["heights"]] == [0, 1, 1, 2]
    assert data["distributive"] and data["modular"] and data["semimodular"]
    assert len(data["hasse"]) == 4
    dot_path = tmp_path / "reg.dot"
    code, out, _ = run(capsys, "lattice", "--relation", ex_file, "--format", "dot", "--out", str(dot_path))
    assert code == 0 and out == ""
    assert dot_path.read_text(encoding="utf-8").count("->") == 4


def test_matroid_json(capsys, ex_file):
    code, out, _ = run(capsys, "matroid", "--relation", ex_file, "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert len(data["independent_sets"]) == 10
    assert len(data["rank"]) == 16
    assert data["axioms"]["I1"] and data["axioms"]["I2"] and data["axioms"]["I3"]
    assert data["axioms"]["counterexamples"] == []


def test_closed_json(capsys, ex_file):
    code, out, _ = run(capsys, "closed", "--relation", ex_file, "--format", "json")
    data = json.loads(out)
    assert code == 0
    expected = [[], ["2"], ["4"], ["1", "3"], ["1", "2", "3", "4"]]
    assert data["oracle"] == expected
    assert data["derivation"]["candidate"] == expected
    assert data["derivation"]["step1"] == [["2"]]
    assert data["discrepancy"] == []


def test_closed_exit_one_on_discrepancy(capsys, tmp_path):
    from test_verification import INCOMPLETE

    path = tmp_path / "inc.rel"
    path.write_text(INCOMPLETE)
    code, out, _ = run(capsys, "closed", "--relation", str(path))
    assert code == 1
    assert "discrepancy: {" in out


def test_verify_relation(capsys, ex_file):
    code, out, _ = run(capsys, "verify", "--relation", ex_file, "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert [r["id"] for r in data["reports"]] == ["P2.3", "P2.4", "P3.1", "P3.3", "P3.6", "P4.1",
                                                  "P4.2", "P4.3", "P4.4", "P4.5", "P4.6", "C4.7"]
    assert all(r["verdict"] == "pass" and r["counterexamples"] == [] for r in data["reports"])


def test_verify_random(capsys):
    code, out, _ = run(capsys, "verify", "--random", "50", "--size", "6", "--seed", "7", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["summary"]["samples"] == 50 and data["summary"]["failed_samples"] == 0
    for sample in data["samples"]:
        assert sample["size"] == 6
        if sample["discrepancy"]:
            assert sample["relation"]["matrix"]


def test_verify_random_size_range_and_density(capsys):
    code, out, _ = run(capsys, "verify", "--random", "10", "--size", "2..4", "--density", "0.3", "--seed", "1", "--format", "json")
    data = json.loads(out)
    assert {s["density"] for s in data["samples"]} == {0.3}
    assert all(2 <= s["size"] <= 4 for s in data["samples"])


def test_example_command(capsys):
    code, out, _ = run(capsys, "example")
    assert code == 0
    assert "Reg(U, R) = {∅, {4}, {1,3}, {1,2,3,4}}" in out
    assert "L(M(Reg(U, R))) = {∅, {2}, {4}, {1,3}, {1,2,3,4}}" in out
    code, out, _ = run(capsys, "example", "--which", "4.8", "--format", "json")
    data = json.loads(out)
    assert "example_3.5" not in data
    assert data["example_4.8"]["closed_sets"] == [[], ["2"], ["4"], ["1", "3"], ["1", "2", "3", "4"]]


@pytest.mark.parametrize(
    "argv",
    [
        ["verify"],
        ["verify", "--random", "3", "--size", "4"],
        ["regular", "--relation", "/nonexistent/file.rel"],
        ["lattice"],
        ["nonsense"],
    ],
)
def test_usage_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_parse_error_exit_two(capsys, tmp_path):
    path = tmp_path / "bad.rel"
    path.write_text("universe 4\n5 1\n")
    code, _, err = run(capsys, "regular", "--relation", str(path))
    assert code == 2
    assert "line 2" in err and "'5'" in err


def test_hypothesis_violation_exit_two(capsys, tmp_path):
    path = tmp_path / "nt.rel"
    path.write_text("universe 3\n1 2\n2 3\n3 3\n")
    code, _, err = run(capsys, "matroid", "--relation", str(path))
    assert code == 2 and "transitive" in err


def test_module_entry_point(ex_file):
    proc = subprocess.run([sys.executable, "-m", "roughmatroid", "regular", "--relation", ex_file],
                          capture_output=True, text=True, check=True)
    assert re.search(r"Reg\(U, R\) = \{∅, \{4\}, \{1,3\}, \{1,2,3,4\}\}", proc.stdout)
