import json

import pytest

from linksgould import verify
from linksgould.errors import TableParseError
from linksgould.poly2 import ONE, Laurent1, Laurent2
from linksgould.verify import (
    KnotRecord,
    alternating_equality_check,
    fibered_monic_check,
    genus_bound_check,
    ishii_sign_check,
)

HEADER = "name,presentation,genus,components,alternating,fibered,expected_alexander,expected_lg\n"


def _write(tmp_path, body, name="t.csv"):
    path = tmp_path / name
    path.write_text(HEADER + body)
    return path


@pytest.fixture(scope="module")
def golden_report():
    return verify.run_table(verify.golden_table_path())


class TestChecks:
    def test_ishii_examples(self):
        assert ishii_sign_check(ONE)
        assert ishii_sign_check(Laurent2.parse("t0 + t1"))
        assert not ishii_sign_check(Laurent2.parse("1 + t0"))
        assert ishii_sign_check(Laurent2.parse("1 - t0 + t0*t1"))

    def test_genus_bound_equality(self):
        trefoil_delta = Laurent1.parse("t - 1 + t^-1")
        r = genus_bound_check(4, 1, 1, trefoil_delta)
        assert r.status == "equality"
        assert r.detail["chain_ok"] and 2 * r.detail["alexander_breadth"] == 4

    def test_genus_bound_strict_and_fail(self):
        assert genus_bound_check(2, 1, 1).status == "strict"
        assert genus_bound_check(6, 1, 1).status == "fail"
        assert genus_bound_check(4, None, 1).status == "skipped"

    def test_alternating(self):
        assert alternating_equality_check(4, 1, 1, True).status == "equality"
        assert alternating_equality_check(2, 1, 1, True).status == "strict"
        assert alternating_equality_check(4, 1, 1, False).status == "skipped"

    def test_fibered_quadrants(self):
        monic = Laurent2.parse("t0*t1^-1 + 3 + t0^-1*t1")
        non_monic = Laurent2.parse("2*t0*t1^-1 + 3 + 2*t0^-1*t1")
        assert fibered_monic_check(monic, True, 1, None).detail["quadrant"] == "fibered/monic"
        assert fibered_monic_check(non_monic, False, 1, None).detail["quadrant"] == "non-fibered/non-monic"
        assert fibered_monic_check(monic, None, 1, None).status == "skipped"

    def test_monic_lg_with_non_monic_alexander_is_hard_failure(self):
        monic = Laurent2.parse("t0*t1^-1 + 3 + t0^-1*t1")
        r = fibered_monic_check(monic, True, 1, Laurent1.parse("2*t - 3 + 2*t^-1"))
        assert r.status == "fail"


class TestTable:
    def test_golden_table_passes(self, golden_report):
        assert golden_report.ok
        assert golden_report.summary["records"] == 7
        assert "fail" not in golden_report.summary

    def test_golden_whitehead_row(self, golden_report):
        row = next(r for r in golden_report.records if r["name"] == "whitehead_double_trefoil")
        assert row["checks"]["golden"] == {"status": "pass", "lg_match": True, "alexander_match": True}
        assert row["checks"]["genus_bound"]["status"] == "equality"
        assert row["span"] == 4

    def test_golden_quadrants(self, golden_report):
        rows = {r["name"]: r for r in golden_report.records}
        assert rows["trefoil"]["checks"]["fibered"]["lg_monic"] is True
        assert rows["5_2"]["checks"]["fibered"]["lg_monic"] is False
        assert rows["trefoil"]["checks"]["presentations"]["twist:1"] == "mirror"

    def test_report_is_deterministic(self, golden_report, tmp_path):
        again = verify.run_table(verify.golden_table_path(), output=tmp_path / "r.json")
        assert again.to_json() == golden_report.to_json()
        assert json.loads((tmp_path / "r.json").read_text())["hard_failures"] == 0

    def test_mismatching_expected_lg(self, tmp_path):
        path = _write(tmp_path, 'trefoil,braid:2: 1 1 1,1,1,true,true,,1\n')
        report = verify.run_table(path)
        assert not report.ok
        assert report.records[0]["checks"]["golden"]["status"] == "fail"

    def test_component_mismatch(self, tmp_path):
        report = verify.run_table(_write(tmp_path, "hopf,braid:2: 1 1,,1,,,,\n"))
        assert report.records[0]["checks"]["components"]["status"] == "fail"
        assert not report.ok

    def test_empty_table(self, tmp_path):
        report = verify.run_table(_write(tmp_path, ""))
        assert report.ok and report.records == []

    def test_half_integer_flag(self, tmp_path):
        report = verify.run_table(_write(tmp_path, "hopf,braid:2: 1 1,,2,,,,\n"))
        rec = report.records[0]
        assert rec["span"] == 2 and rec["half_integer"] is True
        assert rec["checks"]["evaluation"]["status"] == "pass"

    def test_family_rows(self, tmp_path):
        body = '"k2m1r7","pretzel:2,-1,7",2,1,false,,,\n"d23","2bridge:2,3",1,1,true,,,\n'
        report = verify.run_table(_write(tmp_path, body))
        assert report.ok
        assert [r["checks"]["genus_bound"]["status"] for r in report.records] == ["equality", "equality"]

    def test_identities_check(self, tmp_path):
        report = verify.run_table(_write(tmp_path, "fig8,braid:3: 1 -2 1 -2,1,1,true,true,,\n"),
                                  checks=verify.ALL_CHECKS)
        ident = report.records[0]["checks"]["identities"]
        assert ident["status"] == "pass" and all(v for k, v in ident.items() if k != "status")

    @pytest.mark.parametrize("body,row,column", [
        ("x,braid:2: 1 q,,,,,,\n", 2, "presentation"),
        ("ok,braid:2: 1,0,1,,,,\nx,braid:2: 1,-1,1,,,,\n", 3, "genus"),
        ("x,braid:2: 1,,1,maybe,,,\n", 2, "alternating"),
        ("x,braid:2: 1,,1,,,t^,\n", 2, "expected_alexander"),
        ("x,braid:2: 1,,1,,,,t0 +\n", 2, "expected_lg"),
        (",braid:2: 1,,1,,,,\n", 2, "name"),
    ])
    def test_parse_errors(self, tmp_path, body, row, column):
        with pytest.raises(TableParseError) as info:
            verify.read_table(_write(tmp_path, body))
        assert (info.value.row, info.value.column) == (row, column)

    def test_missing_column(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("name,presentation\nx,braid:2: 1\n")
        with pytest.raises(TableParseError) as info:
            verify.read_table(path)
        assert info.value.row == 1

    def test_unknown_check(self):
        with pytest.raises(ValueError):
            verify.run_records([], checks={"bogus"})

    def test_record_accessors(self):
        rec = verify.read_table(verify.golden_table_path())[3]
        assert isinstance(rec, KnotRecord) and rec.name == "5_2"
        assert len(rec.braids()) == 1
