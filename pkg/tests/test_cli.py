import json

import pytest
from click.testing import CliRunner

from linksgould.cli import main
from linksgould.families import lg_twist

from conftest import WHITEHEAD_KNOT


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(main, list(args), catch_exceptions=False)

    return invoke


def test_lg_trefoil(run):
    r = run("lg", "2: 1 1 1")
    assert r.exit_code == 0
    assert f"LG = {lg_twist(1).invert()}" in r.output
    assert "span = 4" in r.output


def test_lg_specializations_json(run):
    r = run("--format", "json", "lg", "-s", "2: 1 1 1")
    doc = json.loads(r.output)
    assert doc["antidiag_matches"] and doc["diag_matches"]
    assert doc["alexander"] == "t^-1 - 1 + t"


def test_lg_one_strand(run):
    r = run("lg", "1:")
    assert r.exit_code == 0 and "LG = 1" in r.output and "span = 0" in r.output


def test_lg_whitehead(run, whitehead_lg):
    r = run("--format", "json", "lg", WHITEHEAD_KNOT)
    assert json.loads(r.output)["lg"] == str(whitehead_lg)


def test_verify_scalar_and_workers(run):
    a = run("--format", "json", "--workers", "2", "--verify-scalar", "lg", "4: 1 -2 3 -2 1")
    b = run("--format", "json", "lg", "4: 1 -2 3 -2 1")
    assert a.exit_code == 0 and a.output == b.output


def test_input_error(run):
    assert run("lg", "2: 1 x").exit_code == 2
    assert run("lg", "2: 5").exit_code == 2


def test_scalar_violation_exit(run, monkeypatch):
    from linksgould import lgcore
    from linksgould.errors import ScalarViolation

    def boom(*a, **k):
        raise ScalarViolation("forced")

    monkeypatch.setattr(lgcore, "lg_invariant", boom)
    assert run("lg", "2: 1").exit_code == 3


def test_alexander(run):
    r = run("alexander", "3: 1 -2 1 -2")
    assert "Alexander = -t^-1 + 3 - t" in r.output and "breadth = 2" in r.output


def test_span(run):
    assert run("span", "t0 + t1").output.strip() == "2"
    assert run("span", "twist:3").output.strip() == "4"
    assert run("span", "2: 1 1 1").output.strip() == "4"
    assert run("span", "0").exit_code == 2


def test_family(run):
    r = run("family", "twist:0")
    assert "LG = 1" in r.output
    doc = json.loads(run("--format", "json", "family", "2bridge:2,3").output)
    assert (doc["span"], doc["genus"], doc["components"]) == (4, 1, 1)


def test_family_unsupported(run):
    assert run("family", "pretzel:2,-1,-5").exit_code == 4


def test_family_bad_spec(run):
    assert run("family", "pretzel:2,4,1").exit_code == 2


def test_check_golden(run):
    r = run("check")
    assert r.exit_code == 0
    assert "hard failures: 0" in r.output


def test_check_failure(run, tmp_path):
    path = tmp_path / "t.csv"
    path.write_text("name,presentation,genus,components,alternating,fibered,expected_alexander,expected_lg\n"
                    "trefoil,braid:2: 1 1 1,1,1,true,true,,1\n")
    assert run("check", str(path)).exit_code == 1


def test_check_missing_file(run, tmp_path):
    assert run("check", str(tmp_path / "nope.csv")).exit_code == 2


def test_check_json_output(run, tmp_path):
    out = tmp_path / "r.json"
    r = run("--format", "json", "check", "--checks", "golden,symmetry", "-o", str(out))
    assert r.exit_code == 0
    assert json.loads(r.output) == json.loads(out.read_text())


def test_selftest(run):
    r = run("selftest")
    assert r.exit_code == 0 and "FAIL" not in r.output
    doc = json.loads(run("selftest", "--json").output)
    assert doc["ok"] and doc["identities"]["yang_baxter"]


def test_selftest_corrupted_table(run, tmp_path):
    from importlib import resources
    doc = json.loads((resources.files("linksgould") / "data" / "rmatrix.json").read_text())
    for e in doc["r_pos"]:
        if e["in"] == [4, 1] and e["out"] == [4, 1]:
            e["value"] = "t1 - 1 + t0"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    r = CliRunner(mix_stderr=False).invoke(main, ["selftest", "--rmatrix", str(path)]) \
        if "mix_stderr" in CliRunner.__init__.__code__.co_varnames else \
        CliRunner().invoke(main, ["selftest", "--rmatrix", str(path)])
    assert r.exit_code == 5
    assert "violated:" in (r.stderr if hasattr(r, "stderr") and r.stderr else r.output)
