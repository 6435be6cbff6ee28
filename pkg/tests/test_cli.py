"""The cproj front end: subcommands, reports, exit codes, determinism."""

import json

from cprojver.cli import main
from cprojver.report import SCHEMA


def run(args):
    return main(args)


class TestTable:
    def test_table_report(self, tmp_path, capsys):
        out = tmp_path / "r.json"
        code = run(["table", "--n-min", "2", "--n-max", "3", "--out", str(out)])
        assert code == 0
        rep = json.loads(out.read_text())
        assert rep["schema"] == SCHEMA
        assert rep["pass"] is True
        assert {"check", "anchor", "expected", "computed", "pass", "provenance"} <= set(
            rep["checks"][0]
        )
        printed = capsys.readouterr().out
        assert "submax=8" in printed and "submax=18" in printed

    def test_range_validation(self, capsys):
        assert run(["table", "--n-min", "1", "--n-max", "3"]) == 2
        assert "error" in capsys.readouterr().err

    def test_deterministic_checks(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run(["table", "--n-min", "2", "--n-max", "2", "--out", str(a)])
        run(["table", "--n-min", "2", "--n-max", "2", "--out", str(b)])
        ra, rb = json.loads(a.read_text()), json.loads(b.read_text())
        assert ra["checks"] == rb["checks"]


class TestVerify:
    def test_verify_model(self, tmp_path):
        out = tmp_path / "v.json"
        code = run(
            ["verify", "--model", "type2", "--n", "2", "--fast", "--out", str(out)]
        )
        assert code == 0
        rep = json.loads(out.read_text())
        names = [c["check"] for c in rep["checks"]]
        assert any("symmetry dimension" in n for n in names)
        assert rep["pass"]

    def test_unknown_model(self, capsys):
        assert run(["verify", "--model", "nope", "--n", "2"]) == 2

    def test_type3_n2_reports_out_of_scope_component(self, tmp_path):
        out = tmp_path / "v.json"
        code = run(
            ["verify", "--model", "type3-n2", "--n", "2", "--fast", "--out", str(out)]
        )
        assert code == 0
        rep = json.loads(out.read_text())
        notes = [c for c in rep["checks"] if "not verifiable" in str(c["expected"])]
        assert notes


class TestProlong:
    def test_prolong(self, tmp_path):
        out = tmp_path / "p.json"
        assert run(["prolong", "--type", "II", "--n", "4", "--out", str(out)]) == 0
        rep = json.loads(out.read_text())
        assert rep["pass"]


class TestAlgebra:
    def test_builtin_with_deformation(self, tmp_path):
        out = tmp_path / "a.json"
        code = run(
            ["algebra", "--name", "s", "--deform", "II", "--n", "3", "--out", str(out)]
        )
        assert code == 0

    def test_symbolic_family(self):
        assert run(["algebra", "--name", "lambda-family", "--lam", "symbolic"]) == 0

    def test_manifest_parse_error_exit_code(self, tmp_path, capsys):
        bad = tmp_path / "bad.alg"
        bad.write_text("cproj-algebra v1\nbasis = x y\nbracket [x,q] = y\n")
        assert run(["algebra", "--manifest", str(bad)]) == 2
        assert "manifest error" in capsys.readouterr().err

    def test_no_action(self, capsys):
        assert run(["algebra"]) == 2


class TestMetricCmd:
    def test_metric_battery(self, tmp_path):
        out = tmp_path / "m.json"
        code = run(
            ["metric", "--model", "submax-metric", "--n", "2", "--fast", "--out", str(out)]
        )
        assert code == 0
        rep = json.loads(out.read_text())
        assert rep["pass"]

    def test_sign_pattern_flag(self):
        assert run(["metric", "--model", "submax-metric", "--n", "3", "--signs", "-", "--fast"]) == 0
