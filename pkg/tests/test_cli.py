import json

import pytest

from cnckit.cli import main

PHI_GROUP = "z+alpha:(1+1*sqrt(5))/2"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_normalize_merges_cosets(capsys):
    code, out, _ = run(capsys, "--group", "int", "normalize", "coset(4,0)|coset(4,2)")
    assert code == 0
    assert json.loads(out)["modulus"] == 2


def test_output_is_byte_stable(capsys):
    argv = ("--group", "lexint:2", "normalize", "coset(2,(1,0))&interval([(0,0)],+inf)")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    assert first == json.dumps(json.loads(first), sort_keys=True, indent=2) + "\n"


def test_member_over_zphi(capsys):
    code, out, _ = run(capsys, "--group", PHI_GROUP, "member", "coset(2,0)", "1+1*alpha")
    assert code == 0
    assert json.loads(out)["member"] is False


def test_flags_after_subcommand(capsys):
    code, out, _ = run(capsys, "window", "coset(3,1)", "--group", "int", "--window", "0", "10")
    assert code == 0
    assert json.loads(out)["members"] == ["1", "4", "7", "10"]


def test_text_format(capsys):
    code, out, _ = run(capsys, "--format", "text", "--group", "int", "member", "coset(2,0)", "3", "4")
    assert code == 0
    assert "member  : false" in out and "member  : true" in out


@pytest.mark.parametrize("argv", [
    ("--group", "foo", "member", "all()", "1"),
    ("member", "coset(2,0)", "1"),
    ("--group", "int", "member", "arc(0,1)", "1"),
    ("--group", "int", "member", "coset(2,0)", "x"),
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in json.loads(err)


def test_syntax_error_reports_offset(capsys):
    code, _, err = run(capsys, "--group", "int", "member", "!(", "1")
    assert code == 2
    assert json.loads(err)["offset"] == 2


def test_padic_commands(capsys):
    assert json.loads(run(capsys, "--prime", "2", "padic", "val", "12")[1])["valuation"] == 2
    assert json.loads(run(capsys, "--prime", "3", "padic", "index", "2")[1])["index"] == 4
    got = json.loads(run(capsys, "--prime", "7", "padic", "pow", "5", "2")[1])
    assert got["nth_power"] is False


def test_arc_with_alpha(capsys):
    code, out, _ = run(capsys, "--alpha", "(1+1*sqrt(5))/2", "arc", "arc(0,5)", "13")
    assert code == 0
    assert json.loads(out)["members"][0]["member"] is True


def test_subgroups_and_rn(capsys):
    got = json.loads(run(capsys, "--group", "lexint:2", "subgroups")[1])
    assert [s["descriptor"] for s in got["convex_subgroups"]] == ["zero", "prefix:1", "whole"]
    assert json.loads(run(capsys, "--group", "lexint:2", "rn", "2")[1])["descriptor"] == "prefix:1"


def test_check_examples(capsys):
    code, out, _ = run(capsys, "check", "examples")
    assert code == 0
    assert json.loads(out)["failures"] == []


def test_check_all_small(capsys, monkeypatch):
    monkeypatch.setenv("CNCKIT_SEED", "5")
    code, out, _ = run(capsys, "check", "all", "--scale", "0.01")
    assert code == 0
