import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fcomplete.cli import main
from fcomplete.errors import (
    DuplicateNameError,
    LengthMismatchError,
    LevelOutOfRangeError,
    MissingDomainError,
    ParseError,
)
from fcomplete.opfile import parse_operator_file, render_operator_file
from fcomplete.tables import Domain, OperatorSet, TruthTable


def test_parse_examples():
    s = parse_operator_file("domain 2\nop NAND 2 : 1 1 1 0")
    assert s.domain.m == 2 and s["NAND"].values == (1, 1, 1, 0)
    s = parse_operator_file("domain 3\nop NEG 1 : 2 1 0\nop MAX 2 : 0 1 2 1 1 2 2 2 2")
    assert s["NEG"].values == (2, 1, 0) and s["MAX"].arity == 2


def test_parse_ignores_comments_and_blanks():
    s = parse_operator_file("# header\n\ndomain 2\n  # note\nop N 1 : 1 0\n")
    assert s.names() == ["N"]


@pytest.mark.parametrize(
    "text,error,line",
    [
        ("domain 2\nop F 2 : 1 0", LengthMismatchError, 2),
        ("domain 2\nop F 1 : 1 2", LevelOutOfRangeError, 2),
        ("op F 1 : 1 0", MissingDomainError, 1),
        ("# only a comment\n", MissingDomainError, None),
        ("domain 2\nop F 1 : 1 0\nop F 1 : 0 1", DuplicateNameError, 3),
        ("domain 2\ndomain 3", ParseError, 2),
        ("domain 2\nop 9F 1 : 1 0", ParseError, 2),
        ("domain 2\nop F one : 1 0", ParseError, 2),
        ("domain 2\nfunc F 1 : 1 0", ParseError, 2),
        ("domain 2\nop F 1 1 0", ParseError, 2),
        ("domain 2\nop F 0 : 1", ParseError, 2),
        ("domain 2\n", ParseError, None),
    ],
)
def test_parse_errors(text, error, line):
    with pytest.raises(error) as info:
        parse_operator_file(text)
    assert info.value.line == line


@st.composite
def operator_sets(draw):
    m = draw(st.integers(2, 3))
    d = Domain(m)
    names = draw(st.lists(st.from_regex(r"[A-Za-z_][A-Za-z0-9_]{0,5}", fullmatch=True), min_size=1, max_size=3, unique=True))
    ops = {}
    for name in names:
        arity = draw(st.integers(1, 2))
        values = draw(st.lists(st.integers(0, m - 1), min_size=m**arity, max_size=m**arity))
        ops[name] = TruthTable(d, arity, tuple(values))
    return OperatorSet(d, ops)


@settings(max_examples=100, deadline=None)
@given(operator_sets())
def test_render_parse_round_trip(opset):
    assert parse_operator_file(render_operator_file(opset, header="round trip")) == opset


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def _machine(capsys, argv):
    code = main(argv + ["--format", "machine"])
    return code, json.loads(capsys.readouterr().out)


def test_check_nand(write, capsys):
    code, doc = _machine(capsys, ["check", write("nand.ops", "domain 2\nop NAND 2 : 1 1 1 0\n")])
    assert code == 0
    verdict = doc["stable"]["verdict"]
    assert verdict["status"] == "Complete"
    assert verdict["sheffer"] == {"kind": "NAND", "term": "NAND(x0,x1)"}
    assert verdict["neg"] == "NAND(x0,x0)"
    assert doc["stable"]["agreement"] is True


def test_check_and(write, capsys):
    code, doc = _machine(capsys, ["check", "--audit", write("and.ops", "domain 2\nop AND 2 : 0 0 0 1\n")])
    assert code == 1
    assert doc["stable"]["verdict"]["certificate"] == "closure exhausted, 3 tables"
    assert doc["stable"]["audit"] == "passed"


def test_check_neg_max_three_levels(write, capsys):
    path = write("nm.ops", "domain 3\nop NEG 1 : 2 1 0\nop MAX 2 : 0 1 2 1 1 2 2 2 2\n")
    code, doc = _machine(capsys, ["check", path])
    assert code == 0
    assert doc["stable"]["verdict"]["sheffer"] == {"kind": "NOR", "term": "NEG(MAX(x0,x1))"}
    assert doc["stable"]["oracle"] is None


def test_check_inconclusive_exit_status(write, capsys):
    path = write("imp.ops", "domain 2\nop IMP 2 : 1 1 0 1\n")
    code, doc = _machine(capsys, ["check", path, "--budget-tables", "3"])
    assert code == 2
    assert doc["stable"]["verdict"]["status"] == "Inconclusive"


def test_error_exit_statuses(write, capsys):
    assert main(["check", write("bad.ops", "domain 2\nop F 2 : 1 0\n")]) == 65
    assert "line 2" in capsys.readouterr().err
    assert main(["check", "/nonexistent/file.ops"]) == 66
    assert main(["oracle", write("t.ops", "domain 3\nop N 1 : 2 1 0\n")]) == 65
    assert main(["survey", "--m", "3"]) == 64
    assert main(["family", "--family", "r9", "--n", "2"]) == 64
    assert main(["check", write("ok.ops", "domain 2\nop N 1 : 1 0\n"), "--budget-tables", "0"]) == 64
    with pytest.raises(SystemExit) as info:
        main(["check"])
    assert info.value.code == 64


def test_oracle_nand(write, capsys):
    code, doc = _machine(capsys, ["oracle", write("nand.ops", "domain 2\nop NAND 2 : 1 1 1 0\n")])
    assert code == 0
    oracle = doc["stable"]["oracle"]
    assert oracle["status"] == "Complete"
    assert set(oracle["escapes"].values()) == {"NAND"}


@pytest.mark.parametrize(
    "text",
    ["domain 2\nop AND 2 : 0 0 0 1\nop OR 2 : 0 1 1 1\n", "domain 2\nop XOR 2 : 0 1 1 0\nop NEG 1 : 1 0\n"],
)
def test_compare_incomplete_sets(write, capsys, text):
    code, doc = _machine(capsys, ["compare", write("c.ops", text)])
    assert code == 1
    assert doc["stable"]["engine"]["status"] == doc["stable"]["oracle"]["status"] == "Incomplete"
    assert doc["stable"]["agreement"] is True


@pytest.mark.parametrize(
    "flags,line",
    [
        (["--family", "r1", "--n", "2", "--m", "2"], "op R1 2 : 1 0 0 0"),
        (["--family", "r3", "--n", "2", "--m", "2"], "op R3 2 : 1 1 1 0"),
        (["--family", "r7", "--n", "2", "--stars", "or", "--lozenges", "negneg,neg", "--m", "2"], "op R7 2 : 1 0 1 1"),
    ],
)
def test_family(capsys, flags, line):
    assert main(["family"] + flags) == 0
    out = capsys.readouterr().out
    assert line in out.splitlines()
    assert parse_operator_file(out).domain.m == 2


def test_survey_singletons(capsys):
    code, doc = _machine(capsys, ["survey", "--max-size", "1"])
    assert code == 0
    summary = doc["stable"]["summary"]
    assert summary == {"sets": 20, "complete": 2, "agreement": 20, "inconclusive": 0}
    assert doc["stable"]["complete_singletons"] == ["B1000", "B1110"]


def test_modops(capsys):
    code, doc = _machine(capsys, ["modops", "--m", "3", "--order", "geq"])
    assert code == 0
    assert doc["stable"]["modifications"] == ["2 1 0"]


def test_closure_listing(write, capsys):
    code, doc = _machine(capsys, ["closure", write("max.ops", "domain 2\nop MAX 2 : 0 1 1 1\n")])
    assert code == 0
    assert doc["stable"]["closure"]["tables"] == 3
    assert [r["witness"] for r in doc["stable"]["reached"]] == ["x0", "x1", "MAX(x0,x1)"]


def test_regression_command(capsys):
    code, doc = _machine(capsys, ["regression"])
    assert code == 0
    summary = doc["stable"]["summary"]
    assert summary["engine_oracle_splits"] == 0
    assert summary["claim_discrepancies"] == len(doc["stable"]["discrepancies"])


def test_reports_are_deterministic(write, capsys):
    path = write("nm.ops", "domain 3\nop NEG 1 : 2 1 0\nop MAX 2 : 0 1 2 1 1 2 2 2 2\n")
    _, first = _machine(capsys, ["check", path])
    _, second = _machine(capsys, ["check", path])
    assert json.dumps(first["stable"]) == json.dumps(second["stable"])
    assert first["stable_digest"] == second["stable_digest"]


def test_text_format(write, capsys):
    assert main(["check", write("nand.ops", "domain 2\nop NAND 2 : 1 1 1 0\n")]) == 0
    out = capsys.readouterr().out
    assert "status: Complete" in out
    assert "definition: complete = the set represents negation" in out


def test_module_entry_point(write):
    path = write("nand.ops", "domain 2\nop NAND 2 : 1 1 1 0\n")
    proc = subprocess.run([sys.executable, "-m", "fcomplete", "check", path], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "NAND(x0,x1)" in proc.stdout
