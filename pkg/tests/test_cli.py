import json

import pytest

from latticeineq.cli import main

RECT23 = {
    "dim": 2,
    "entries": [
        {"z": [x, y], "v": "1"} for x in (0, 1) for y in (0, 1, 2)
    ],
}


@pytest.fixture
def rect_file(tmp_path):
    path = tmp_path / "rect23.json"
    path.write_text(json.dumps(RECT23))
    return str(path)


class TestCheckCommand:
    def test_rect_csv_scenario(self, rect_file, capsys):
        code = main(["check", "--input", rect_file,
                     "--ineq", "gn,sobolev,iso,lw", "--format", "csv"])
        out = capsys.readouterr().out.strip().splitlines()
        assert code == 0
        assert out[0].startswith("# tol=")
        assert out[1] == "inequality,n,p,lhs,rhs,deficit,relation,extremal_class"
        rows = [line.split(",") for line in out[2:]]
        assert [r[0] for r in rows] == ["GN", "SOBOLEV", "ISOPERIMETRIC", "LW"]
        relations = {r[0]: r[6] for r in rows}
        assert relations == {
            "GN": "EXACT_EQUAL",
            "SOBOLEV": "STRICT",
            "ISOPERIMETRIC": "STRICT",
            "LW": "EXACT_EQUAL",
        }

    def test_zero_function_exit_2(self, tmp_path, capsys):
        path = tmp_path / "empty.json"
        path.write_text(json.dumps({"dim": 2, "entries": []}))
        code = main(["check", "--input", str(path)])
        assert code == 2
        err = capsys.readouterr().err
        assert "degenerate input" in err and "zero function" in err

    def test_malformed_json_exit_2(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{oops")
        assert main(["check", "--input", str(path)]) == 2
        assert "invalid input" in capsys.readouterr().err

    def test_dimension_mismatch_exit_2(self, tmp_path, capsys):
        path = tmp_path / "f.json"
        path.write_text(json.dumps({"dim": 2, "entries": [{"z": [0], "v": "1"}]}))
        assert main(["check", "--input", str(path)]) == 2
        assert "dimension" in capsys.readouterr().err

    def test_n1_rejected_with_hypothesis_message(self, tmp_path, capsys):
        path = tmp_path / "one.json"
        path.write_text(json.dumps({"dim": 1, "entries": [{"z": [0], "v": "1"}]}))
        assert main(["check", "--input", str(path)]) == 2
        assert ">= 2" in capsys.readouterr().err

    def test_bad_tol_exit_2(self, rect_file, capsys):
        assert main(["check", "--input", rect_file, "--tol", "-1"]) == 2
        assert "tol" in capsys.readouterr().err

    def test_signed_function_default_selection(self, tmp_path, capsys):
        path = tmp_path / "signed.json"
        path.write_text(json.dumps({
            "dim": 2,
            "entries": [{"z": [0, 0], "v": "1"}, {"z": [1, 0], "v": "-1"}],
        }))
        code = main(["check", "--input", str(path)])
        assert code == 0
        obj = json.loads(capsys.readouterr().out)
        names = [r["inequality"] for r in obj["reports"]]
        assert "BL" not in names and "GN" in names

    def test_bl_on_signed_function_domain_error(self, tmp_path, capsys):
        path = tmp_path / "signed.json"
        path.write_text(json.dumps({
            "dim": 2,
            "entries": [{"z": [0, 0], "v": "1"}, {"z": [1, 0], "v": "-1"}],
        }))
        assert main(["check", "--input", str(path), "--ineq", "bl"]) == 2
        assert "domain error" in capsys.readouterr().err

    def test_set_input_runs_all_checks_normalized(self, tmp_path, capsys):
        path = tmp_path / "set.json"
        path.write_text(json.dumps({"dim": 2, "points": [[0, 0], [0, 1], [1, 0], [1, 1]]}))
        code = main(["check", "--input", str(path), "--ineq", "all"])
        assert code == 0
        obj = json.loads(capsys.readouterr().out)
        relations = {r["inequality"]: r["relation"] for r in obj["reports"]}
        # 2x2 cube: everything is an equality case
        assert set(relations.values()) == {"EXACT_EQUAL"}

    def test_exact_flag_requires_certificate(self, tmp_path, capsys):
        path = tmp_path / "f.json"
        path.write_text(json.dumps({
            "dim": 2,
            "entries": [{"z": [0, 0], "v": "2"}, {"z": [1, 0], "v": "1"}],
        }))
        assert main(["check", "--input", str(path), "--ineq", "gn", "--exact"]) == 2
        assert "certificate" in capsys.readouterr().err

    def test_unknown_ineq_exit_2(self, rect_file, capsys):
        assert main(["check", "--input", rect_file, "--ineq", "nope"]) == 2
        assert "unknown inequality" in capsys.readouterr().err

    def test_byte_stable_output(self, rect_file, capsys):
        main(["check", "--input", rect_file, "--format", "csv", "--ineq", "all",
              "--normalize"])
        first = capsys.readouterr().out
        main(["check", "--input", rect_file, "--format", "csv", "--ineq", "all",
              "--normalize"])
        second = capsys.readouterr().out
        assert first == second

    def test_out_file(self, rect_file, tmp_path):
        dest = tmp_path / "report.json"
        code = main(["check", "--input", rect_file, "--out", str(dest)])
        assert code == 0
        obj = json.loads(dest.read_text())
        assert obj["tol"] == 1e-9
        assert obj["reports"]


class TestFuzzCommand:
    def test_small_fuzz(self, capsys):
        code = main(["fuzz", "--count", "60", "--n", "2", "--seed", "42"])
        assert code == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["violations"] == 0
        assert obj["count"] == 60
        assert obj["per_inequality"]["GN"]["count"] == 60


class TestSearchCommand:
    def test_anneal(self, capsys):
        code = main(["search", "--mode", "anneal", "--n", "2", "--size", "4",
                     "--iters", "20000", "--seed", "1"])
        assert code == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["objective"] == "ISO_RATIO"
        assert obj["best_value"] == 1.0  # 2x2 cube
        assert obj["seed"] == 1

    def test_anneal_needs_size(self, capsys):
        assert main(["search", "--mode", "anneal", "--n", "2"]) == 2
        assert "--size" in capsys.readouterr().err

    def test_ascend(self, capsys):
        code = main(["search", "--mode", "ascend", "--n", "2",
                     "--window-side", "2", "--iters", "300", "--seed", "0",
                     "--start", "indicator"])
        assert code == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["best_value"] == 1.0
        assert obj["iterations"] == 0


class TestEnumerateCommand:
    def test_small_box_with_report(self, tmp_path, capsys):
        dest = tmp_path / "rows.csv"
        code = main(["enumerate", "--n", "2", "--box", "2", "--report", str(dest)])
        assert code == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["total_checked"] == 15
        assert obj["mismatches"] == 0
        lines = dest.read_text().strip().splitlines()
        assert lines[0] == "set_id,size,shape_class,gn_equal,iso_equal,lw_equal"
        assert len(lines) == 16

    def test_budget_exceeded_exit_2(self, capsys):
        assert main(["enumerate", "--n", "2", "--box", "4", "--budget", "10"]) == 2
        err = capsys.readouterr().err
        assert "65535" in err


class TestTableCommand:
    def test_nine_rows_all_gn_equal(self, capsys):
        code = main(["table", "--n", "2", "--max-side", "3", "--ineq", "gn,iso"])
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        header = lines[1].split(",")
        rows = [line.split(",") for line in lines[2:]]
        assert len(rows) == 9
        gn_rel = header.index("gn_relation")
        iso_rel = header.index("iso_relation")
        assert all(r[gn_rel] == "EXACT_EQUAL" for r in rows)
        iso_by_sides = {r[0]: r[iso_rel] for r in rows}
        for sides, rel in iso_by_sides.items():
            a, b = sides.split("x")
            assert rel == ("EXACT_EQUAL" if a == b else "STRICT")

    def test_dedup_six_rows(self, capsys):
        code = main(["table", "--n", "2", "--max-side", "3", "--dedup"])
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) - 2 == 6

    def test_three_dim_certificates(self, capsys):
        code = main(["table", "--n", "3", "--max-side", "2", "--ineq", "gn"])
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        header = lines[1].split(",")
        rows = [line.split(",") for line in lines[2:]]
        assert len(rows) == 8
        lhs_i = header.index("gn_cert_lhs")
        rhs_i = header.index("gn_cert_rhs")
        for r in rows:
            assert r[lhs_i] == r[rhs_i] != ""

    def test_invalid_range_exit_2(self, capsys):
        assert main(["table", "--n", "2", "--min-side", "3", "--max-side", "2"]) == 2
        assert "side range" in capsys.readouterr().err


class TestLogChecksFromCli:
    def test_set_input_logbl(self, tmp_path, capsys):
        path = tmp_path / "grid.json"
        path.write_text(json.dumps(
            {"dim": 2, "points": [[0, 0], [0, 2], [1, 0], [1, 2]]}
        ))
        code = main(["check", "--input", str(path), "--ineq", "logbl", "--p", "1"])
        assert code == 0
        obj = json.loads(capsys.readouterr().out)
        report = obj["reports"][0]
        assert report["relation"] == "EXACT_EQUAL"
        assert report["p"] == "1"

    def test_normalize_flag_enables_log_defaults(self, tmp_path, capsys):
        path = tmp_path / "f.json"
        path.write_text(json.dumps(
            {"dim": 2, "entries": [{"z": [0, 0], "v": "2"}, {"z": [3, 1], "v": "1"}]}
        ))
        code = main(["check", "--input", str(path), "--normalize"])
        assert code == 0
        obj = json.loads(capsys.readouterr().out)
        names = {r["inequality"] for r in obj["reports"]}
        assert "LOG_BL" in names and "LOG_SOBOLEV_DIR" in names


class TestExitCodeContract:
    def test_invalid_p_exit_2(self, tmp_path, capsys):
        path = tmp_path / "f.json"
        path.write_text(json.dumps({"dim": 2, "entries": [{"z": [0, 0], "v": "1"}]}))
        assert main(["check", "--input", str(path), "--ineq", "logbl", "--p", "0"]) == 2
        assert "p must be positive" in capsys.readouterr().err
        assert main(["check", "--input", str(path), "--ineq", "logbl", "--p", "x"]) == 2

    def test_violation_reports_exit_1(self, tmp_path, capsys, monkeypatch):
        # a VIOLATED relation cannot arise from valid inputs, so fake one to
        # pin down the exit-code plumbing and the input echo
        import latticeineq.cli as cli
        from latticeineq.certify import InequalityReport, Inequality, Relation

        def fake_check(f, tol):
            return InequalityReport(
                inequality=Inequality.GN, n=2, p=None, lhs=2.0, rhs=1.0,
                deficit=-1.0, relation=Relation.VIOLATED,
                input_echo={"dim": 2, "entries": []},
            )

        monkeypatch.setattr(cli, "check_gn", fake_check)
        path = tmp_path / "f.json"
        path.write_text(json.dumps({"dim": 2, "entries": [{"z": [0, 0], "v": "1"}]}))
        code = main(["check", "--input", str(path), "--ineq", "gn"])
        assert code == 1
        obj = json.loads(capsys.readouterr().out)
        assert obj["reports"][0]["relation"] == "VIOLATED"
        assert "input_echo" in obj["reports"][0]


class TestCrossProcessByteStability:
    def test_check_and_fuzz_are_byte_stable_across_interpreters(self, tmp_path):
        import subprocess
        import sys

        path = tmp_path / "rect.json"
        path.write_text(json.dumps(RECT23))

        def run(args):
            return subprocess.run(
                [sys.executable, "-m", "latticeineq.cli"] + args,
                capture_output=True, check=True,
            ).stdout

        check_args = ["check", "--input", str(path), "--format", "csv",
                      "--ineq", "all", "--normalize"]
        assert run(check_args) == run(check_args)
        fuzz_args = ["fuzz", "--count", "40", "--n", "2", "--seed", "9"]
        assert run(fuzz_args) == run(fuzz_args)
