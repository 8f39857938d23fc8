import json
import subprocess
import sys

import pytest

from meshpat.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestCount:
    @pytest.mark.parametrize("pat, perm, want", [("12:", "21", "0"), ("123:", "123", "1"),
                                                 ("132:(0,0)(1,1)(1,2)(3,1)", "24513", "1")])
    def test_values(self, capsys, pat, perm, want):
        assert run(capsys, "count", pat, perm) == (0, want + "\n", "")

    def test_parse_error_names_token(self, capsys):
        code, out, err = run(capsys, "count", "132:(0,0)(9,1)", "24513")
        assert code == 2 and "(9,1)" in err and out == ""

    def test_bad_permutation(self, capsys):
        code, _, err = run(capsys, "count", "12:", "1134")
        assert code == 2 and "1134" in err


class TestCheckPair:
    def test_catalog_pair(self, capsys):
        code, out, _ = run(capsys, "check-pair", "X1_19", "--nmax", "7")
        rep = json.loads(out)
        assert code == 0
        assert rep["verdict"] == "verified-at-depth" and rep["witness"] is None
        assert [d["n"] for d in rep["distributions"]] == list(range(1, 8))

    def test_classical_pair_refuted(self, capsys):
        code, out, _ = run(capsys, "check-pair", "123:", "132:", "--nmax", "6")
        rep = json.loads(out)
        assert code == 1 and rep["verdict"] == "refuted" and rep["witness"] == [4, 0, 3]

    def test_conjecture_label(self, capsys):
        code, out, _ = run(capsys, "check-pair", "P117", "--nmax", "7")
        assert code == 0 and json.loads(out)["verdict"] == "supported-at-depth"

    def test_csv(self, capsys):
        code, out, err = run(capsys, "check-pair", "X1_17", "--nmax", "4", "--format", "csv")
        lines = out.splitlines()
        assert code == 0 and lines[0] == "n,k,l,count"
        assert sum(int(r.split(",")[3]) for r in lines[1:] if r.startswith("4,")) == 24
        assert err.startswith("verified-at-depth")

    def test_unknown_id(self, capsys):
        code, _, err = run(capsys, "check-pair", "X7_1")
        assert code == 2 and "X7_1" in err

    def test_jobs_byte_identical(self, capsys):
        a = run(capsys, "check-pair", "X2_13", "--nmax", "7", "--jobs", "1")
        b = run(capsys, "check-pair", "X2_13", "--nmax", "7", "--jobs", "2")
        assert a == b


class TestVerifyTables:
    def test_table2_equidistribution(self, capsys):
        code, out, _ = run(capsys, "verify-tables", "--tables", "2", "--nmax", "6", "--checks", "jd",
                           "--format", "json")
        rep = json.loads(out)
        assert code == 0 and rep["summary"]["entries"] == 44 and rep["summary"]["failed"] == []

    def test_table2_constructions_fail_on_single_swap(self, capsys):
        code, out, _ = run(capsys, "verify-tables", "--tables", "2", "--nmax", "5", "--format", "json")
        failed = json.loads(out)["summary"]["failed"]
        assert code == 1
        assert failed == ["X1_19", "X1_20", "X1_21", "X1_22", "Y1_19", "Y1_20", "Y1_21", "Y1_22"]

    def test_table7_supported(self, capsys):
        code, out, _ = run(capsys, "verify-tables", "--tables", "7", "--nmax", "7", "--format", "csv")
        rows = out.splitlines()[1:]
        assert code == 0 and len(rows) == 14
        assert all(",supported-at-depth,jd,1" in r for r in rows)

    def test_table8_text(self, capsys):
        code, out, _ = run(capsys, "verify-tables", "--tables", "8", "--nmax", "5", "--checks", "jd")
        assert code == 0
        assert "562/562 entries pass" in out
        assert "562 (template, p) pairs, 558 distinct shadings" in out

    @pytest.mark.parametrize("spec", ["9", "x", "2..x"])
    def test_bad_tables(self, capsys, spec):
        code, _, err = run(capsys, "verify-tables", "--tables", spec)
        assert code == 2 and err

    def test_ranges(self, capsys):
        code, out, _ = run(capsys, "verify-tables", "--tables", "5..6", "--nmax", "4", "--checks", "jd",
                           "--format", "json")
        assert json.loads(out)["summary"]["tables"] == [5, 6]


class TestDiscover:
    def test_text(self, capsys):
        code, out, _ = run(capsys, "discover", "--nmax", "7")
        assert code == 0
        assert "passing: 132 shadings in 66 inverse orbits" in out
        assert "catalog shadings missing: 0" in out

    def test_json(self, capsys):
        code, out, _ = run(capsys, "discover", "--nmax", "6", "--format", "json")
        rep = json.loads(out)
        assert code == 0 and rep["catalog_missing"] == []


class TestTrace:
    def test_golden(self, capsys):
        code, out, _ = run(capsys, "bijection-trace", "box-lemma", "263518497")
        steps = json.loads(out)
        assert code == 0
        assert steps[0] == {"step": 1, "swap": [8, 9], "result": "263519487"}
        assert len(steps) == 5 and steps[-1]["result"] == "325916487"

    def test_occurrence_free(self, capsys):
        assert run(capsys, "bijection-trace", "X2_1", "1") == (0, "[]\n", "")

    def test_single_swap(self, capsys):
        code, out, _ = run(capsys, "bijection-trace", "X2_10", "1324")
        assert code == 0 and len(json.loads(out)) == 1

    def test_no_map(self, capsys):
        code, _, err = run(capsys, "bijection-trace", "P117", "123")
        assert code == 2 and "no registered map" in err

    def test_precondition(self, capsys):
        code, _, err = run(capsys, "bijection-trace", "X4_4", "312645")
        assert code == 1 and "precondition" in err


def test_usage_error_exit_code():
    proc = subprocess.run([sys.executable, "-m", "meshpat", "count"], capture_output=True, text=True)
    assert proc.returncode == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "meshpat", "count", "123:", "123"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "1\n"
