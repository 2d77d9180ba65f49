import json
import subprocess
import sys

import jsonschema
import pytest

from nilrel import cli
from nilrel.cli import REPORT_SCHEMA, run


def ok(argv):
    code, report = run(argv)
    assert code == 0, argv
    jsonschema.validate(report, REPORT_SCHEMA)
    return report


@pytest.fixture
def abab(tmp_path):
    f = tmp_path / "abab.m"
    f.write_text("M\nabab\n")
    return str(f)


def test_check_identity(abab):
    assert ok(["check-identity", "--monoid", abab, "--lhs", "xxy", "--rhs", "yxx"])["verdict"] is True
    r = ok(["check-identity", "--monoid", abab, "--lhs", "xyxy", "--rhs", "yxyx"])
    assert r["verdict"] is False and r["details"]["counterexample"] == {"x": "a", "y": "b"}


def test_gen_word():
    assert ok(["gen-word", "--family", "chain", "--n", "3", "--p", "1", "--q", "1"])["verdict"] == "x1x2x1x3x2x3"


def test_pattern_solve(tmp_path):
    assert ok(["pattern-solve", "--builtin", "chain", "--n", "5"])["verdict"] == "no word"
    assert ok(["pattern-solve", "--builtin", "chain", "--n", "5", "--remove-edge", "5,1"])["verdict"] != "no word"
    r = ok(["pattern-solve", "--builtin", "crown", "--n", "6", "--max-nodes", "4"])
    assert r["verdict"] is None and r["bounded"]["truncated"]
    f = tmp_path / "sys.json"
    f.write_text(json.dumps(r["details"]["system"]))
    assert ok(["pattern-solve", "--system", str(f), "--profile", "2,2,2,2,2,2"])["verdict"] == "no word"


def test_scheme_commands(tmp_path):
    f = tmp_path / "F.json"
    ok(["build-scheme", "--family", "crown", "--n", "6", "--out", str(f)])
    assert ok(["verify-scheme", "--monoid", "M:abba", "--scheme", str(f)])["verdict"] is True
    r = ok(["comes-from-term", "--monoid", "M:abba", "--scheme", str(f)])
    assert r["verdict"] is False and r["details"]["certificate_refuted"]
    r = ok(["induced-op", "--monoid", "M:abba", "--scheme", str(f), "--tuple", "a,a,b,1,1,1"])
    assert r["details"]["well_defined"]


def test_monoid_commands():
    assert ok(["dump-monoid", "--monoid", "A 2 ab"])["verdict"] == 20
    assert ok(["min-alpha", "--monoid", "M:asabtb"])["verdict"] == [3, 1]
    assert ok(["isoterm", "--monoid", "M:abab", "--word", "xyxy"])["verdict"] is True
    assert ok(["island", "--monoid", "M:abba", "--words", "xyxy,yxyx,xxyy,yyxx"])["verdict"] is True
    assert ok(["check-conditions", "--family", "crown", "--monoid", "M:abba"])["verdict"] is True


def test_mak_and_asabtb_commands(tmp_path):
    assert ok(["mak-equiv", "--kappa", "2", "--u", "xyxyx", "--v", "yyxxx"])["verdict"] is True
    f = tmp_path / "F.json"
    from nilrel.schemes import scheme_from_term
    f.write_text(json.dumps(scheme_from_term(tuple(range(1, 24)), 23).to_json()))
    assert ok(["mak-reconstruct", "--kappa", "2", "--scheme", str(f)])["details"]["word"].startswith("x1x2x3")
    assert ok(["asabtb-reconstruct", "--scheme", str(f)])["verdict"] is True
    assert ok(["asabtb-nf", "--word", "xysyxt"])["verdict"] == "xysxyt"
    assert ok(["asabtb-equiv", "--u", "xysyxt", "--v", "xysxyt"])["verdict"] is True


def test_alternating_chain_command():
    assert ok(["alternating-chain", "--kappa-max", "2"])["verdict"] is True


@pytest.mark.parametrize("name,expect", [
    ("abab-chain-n5", {"scheme_valid": True, "comes_from_term": False}),
    ("abba-crown-n6", {"scheme_valid": True, "comes_from_term": False}),
    ("asabtb-roundtrip", {"reconstruction_ok": True}),
])
def test_reproduce(name, expect):
    r = ok(["reproduce", name])
    for k, v in expect.items():
        assert r["verdict"][k] == v


def test_replay_is_deterministic():
    first = ok(["reproduce", "mak-roundtrip"])
    again = ok(first["command"])
    assert again["verdict"] == first["verdict"] and again["details"] == first["details"]


def test_usage_errors(capsys):
    assert run(["no-such-command"])[0] == 2
    assert run(["check-identity", "--monoid", "M:abab", "--lhs", "x(", "--rhs", "y"])[0] == 2
    assert run(["reproduce", "nope"])[0] == 2
    assert run(["reproduce"])[0] == 2
    assert run(["--threads", "0", "gen-word", "--family", "chain", "--n", "3"])[0] == 2


def test_internal_error_exit_code(monkeypatch):
    def boom(args):
        raise RuntimeError("broken invariant")
    monkeypatch.setattr(cli, "cmd_schema", boom)
    assert run(["schema"])[0] == 3


def test_threads(monkeypatch):
    monkeypatch.setenv("NILREL_THREADS", "3")
    assert ok(["schema"])["stats"]["threads"] == 3
    assert ok(["--threads", "2", "schema"])["stats"]["threads"] == 2
    monkeypatch.setenv("NILREL_THREADS", "many")
    assert run(["schema"])[0] == 2


def test_schema_is_valid():
    jsonschema.Draft202012Validator.check_schema(REPORT_SCHEMA)


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "nilrel", "gen-word", "--family", "maelstrom", "--n", "4"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["verdict"] == "x1x3x2x4x3x4x1x2"
    assert "gen-word" in out.stderr
