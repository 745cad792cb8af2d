import csv
import io
import json

import pytest

import reference_values as ref
from qfunc.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


class TestEval:
    def test_qexp_at_zero(self, capsys):
        code, out, _ = run_cli(
            capsys, "eval", "--fn", "qexp", "--kind", "3", "--q", "0.5", "--u", "0"
        )
        assert code == 0
        header, rows = parse_csv(out)
        assert header[0] == "function"
        row = dict(zip(header, rows[0]))
        assert float(row["value_re"]) == 1.0
        assert float(row["value_im"]) == 0.0
        assert row["error"] == ""

    def test_besselk_reference_value(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "eval",
            "--fn",
            "besselK",
            "--kind",
            "2",
            "--nu",
            "0.25",
            "--q",
            "0.5",
            "--z",
            "1.0",
        )
        assert code == 0
        _, rows = parse_csv(out)
        got = float(rows[0][7])
        assert abs(got - ref.BESSEL_K2_NU025_Q05_Z1) < 1e-9

    def test_pole_row_sets_exit_64(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "eval",
            "--fn",
            "qexp",
            "--kind",
            "1",
            "--q",
            "0.5",
            "--u",
            "4",
            "--u",
            "0.3",
        )
        assert code == 64
        header, rows = parse_csv(out)
        first = dict(zip(header, rows[0]))
        second = dict(zip(header, rows[1]))
        assert "PoleError" in first["error"]
        assert second["error"] == ""

    def test_grid_produces_count_rows(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "eval",
            "--fn",
            "qexp",
            "--kind",
            "2",
            "--q",
            "0.5",
            "--grid",
            "0",
            "1",
            "5",
        )
        assert code == 0
        _, rows = parse_csv(out)
        assert len(rows) == 5
        assert float(rows[0][5]) == 0.0 and float(rows[-1][5]) == 1.0

    def test_json_lines_parse(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "eval",
            "--format",
            "json",
            "--fn",
            "qexp",
            "--kind",
            "3",
            "--q",
            "0.5",
            "--u",
            "1",
        )
        assert code == 0
        doc = json.loads(out.splitlines()[0])
        assert doc["error"] is None
        assert abs(doc["value"][0] - ref.EXP3_AT_1_Q05) < 1e-9

    def test_complex_argument(self, capsys):
        code, out, _ = run_cli(
            capsys, "eval", "--fn", "qexp", "--kind", "1", "--q", "0.5", "--u", "0.3,0.2"
        )
        assert code == 0
        _, rows = parse_csv(out)
        assert abs(float(rows[0][7]) - ref.EXP1_COMPLEX_Q05.real) < 1e-9
        assert abs(float(rows[0][8]) - ref.EXP1_COMPLEX_Q05.imag) < 1e-9

    def test_values_round_trip_through_csv(self, capsys):
        code, out, _ = run_cli(
            capsys, "eval", "--fn", "lambda", "--kind", "2", "--q", "0.5", "--u", "2"
        )
        assert code == 0
        _, rows = parse_csv(out)
        assert float(rows[0][7]) == pytest.approx(ref.LAMBDA2_AT_2_Q05, rel=1e-11)

    def test_no_points_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "eval", "--fn", "qexp", "--q", "0.5")
        assert code == 2
        assert "error" in err


class TestAsym:
    def test_qexp_table(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "asym",
            "--selector",
            "qexp:2",
            "--q",
            "0.5",
            "--n-start",
            "-2",
            "--n-stop",
            "-6",
        )
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["n", "exact_abs", "asym_abs", "rel_error"]
        assert [r[0] for r in rows] == ["-2", "-3", "-4", "-5", "-6"]
        errs = [float(r[3]) for r in rows[2:]]
        assert all(a > b for a, b in zip(errs, errs[1:]))

    def test_kind3_has_bracket_columns(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "asym",
            "--selector",
            "K:3",
            "--q",
            "0.5",
            "--nu",
            "0.25",
            "--n-start",
            "-2",
            "--n-stop",
            "-3",
        )
        assert code == 0
        header, rows = parse_csv(out)
        assert header[-3:] == ["ratio", "phi_min", "phi_max"]
        assert float(rows[0][5]) <= float(rows[0][6])

    def test_empty_range_emits_header_only(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "asym",
            "--selector",
            "qexp:1",
            "--q",
            "0.5",
            "--n-start",
            "-5",
            "--n-stop",
            "-4",
        )
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["n", "exact_abs", "asym_abs", "rel_error"] and rows == []

    def test_bad_selector(self, capsys):
        code, _, err = run_cli(capsys, "asym", "--selector", "Q:9", "--q", "0.5")
        assert code == 2 and "selector" in err


class TestLaurent:
    def test_lambda_table_matches_library(self, capsys):
        code, out, _ = run_cli(
            capsys, "laurent", "--which", "lambda", "--kind", "2", "--q", "0.5",
            "--window", "3",
        )
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["l", "coeff"]
        table = {int(l): float(c) for l, c in rows}
        assert set(table) == set(range(-3, 4))
        for l, want in enumerate(ref.LAURENT_J2_Q05):
            if l <= 3:
                assert table[l] == pytest.approx(want, rel=1e-9)

    def test_bessel_table_columns(self, capsys):
        code, out, _ = run_cli(
            capsys, "laurent", "--which", "bessel", "--q", "0.5", "--nu", "0.25",
            "--window", "2",
        )
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["l", "sign", "c1", "c2", "c3"]
        assert [r[0] for r in rows] == ["-2", "-1", "0", "1", "2"]
        by_l = {int(r[0]): r for r in rows}
        assert float(by_l[1][2]) == pytest.approx(ref.COEFF_PLUS_J1[1], rel=1e-9)
        assert float(by_l[-1][3]) == pytest.approx(ref.COEFF_MINUS_J2[0], rel=1e-9)


class TestVerify:
    def test_report_shape_and_exit(self, capsys, tmp_path):
        cfg = tmp_path / "suite.cfg"
        cfg.write_text("q_grid = 0.5\nnu_grid = 0.25,0.5\nlattice_points = -3:0.3\n")
        code, out, _ = run_cli(capsys, "verify", "--config", str(cfg))
        doc = json.loads(out)
        assert isinstance(doc, list) and doc
        assert sorted(d["check_id"] for d in doc) == [d["check_id"] for d in doc]
        assert all(set(d) == {"check_id", "worst_residual", "location", "pass"} for d in doc)
        # Known approximate claims keep the overall suite red.
        assert code == 1
        assert any(not d["pass"] for d in doc)
        assert any(d["pass"] for d in doc)

    def test_byte_identical_runs(self, capsys, tmp_path):
        cfg = tmp_path / "suite.cfg"
        cfg.write_text("q_grid = 0.5\nnu_grid = 0.25\nlattice_points = -3:0.3\n")
        code1, out1, _ = run_cli(capsys, "verify", "--config", str(cfg))
        code2, out2, _ = run_cli(capsys, "verify", "--config", str(cfg))
        assert code1 == code2 and out1 == out2

    def test_stamp_adds_timestamp_wrapper(self, capsys, tmp_path):
        cfg = tmp_path / "suite.cfg"
        cfg.write_text("q_grid = 0.5\nnu_grid = 0.25\nlattice_points = -3:0.3\n")
        _, out, _ = run_cli(capsys, "verify", "--config", str(cfg), "--stamp")
        doc = json.loads(out)
        assert "generated_at" in doc and "results" in doc

    def test_missing_config_is_usage_error(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "verify", "--config", str(tmp_path / "nope.cfg"))
        assert code == 2 and "config" in err

    def test_unknown_config_key_is_usage_error(self, capsys, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("q_gird = 0.5\n")
        code, _, err = run_cli(capsys, "verify", "--config", str(cfg))
        assert code == 2


class TestArgparse:
    def test_missing_subcommand(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2

    def test_unknown_function_choice(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["eval", "--fn", "gamma", "--q", "0.5", "--u", "1"])
        assert exc.value.code == 2
