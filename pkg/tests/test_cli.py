import json

import pytest

from specexp import cli
from specexp import symcore as sc


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCoeff:
    def test_order_zero_text(self, capsys):
        code, out, _ = run(capsys, "coeff", "--order", "0", "--form", "ab")
        assert code == 0 and out.strip() == "1/2 * B^(-3/2)"

    def test_order_one_a_form(self, capsys):
        code, out, _ = run(capsys, "coeff", "--order", "1", "--form", "a")
        assert code == 0
        assert "a * a'^2" in out and "a^2 * a''" in out and "-1/4 * a" in out

    def test_json_round_trip(self, capsys):
        code, out, _ = run(capsys, "coeff", "--order", "2", "--format", "json")
        assert code == 0
        from specexp import expansion

        assert sc.sympoly_from_json(json.loads(out)) == expansion.a2M(2)

    def test_check_golden_passes(self, capsys):
        for order in ("0", "1", "2", "4"):
            code, out, _ = run(capsys, "coeff", "--order", order, "--check-golden")
            assert code == 0 and "matches" in out

    def test_check_golden_mismatch_exit_code(self, capsys, monkeypatch):
        tampered = {
            "2": {
                "ab": {"terms": [{"coeff": {"p": 1, "q": 1, "p2": 0, "q2": 1},
                                   "bHalf": -3, "a": [], "b": []}]},
                "a": {"terms": []},
            }
        }
        monkeypatch.setattr(cli, "_reference_tables", lambda: tampered)
        code, out, err = run(capsys, "coeff", "--order", "1", "--check-golden")
        assert code == cli.EXIT_GOLDEN

    def test_complexity_guard(self, capsys):
        code, _, err = run(capsys, "coeff", "--order", "9")
        assert code == cli.EXIT_VALIDATION and "guard" in err

    def test_latex(self, capsys):
        code, out, _ = run(capsys, "coeff", "--order", "0", "--format", "latex")
        assert code == 0 and "\\frac" in out


class TestEval:
    def test_empty_universe_a4_row_zero(self, capsys):
        code, out, _ = run(
            capsys, "eval", "--family", "empty", "--H", "1", "--t", "2", "--maxM", "2"
        )
        assert code == 0
        row = [l for l in out.splitlines() if l.strip().startswith("0")]
        assert row and float(row[0].split()[1]) == 0.0

    def test_sphere_equator(self, capsys):
        code, out, _ = run(
            capsys, "eval", "--family", "sphere", "--t", "1.5708", "--maxM", "1"
        )
        assert code == 0 and "-0.4999" in out

    def test_radiation_finite(self, capsys):
        code, out, _ = run(
            capsys, "eval", "--family", "radiation", "--H", "2", "--t", "0.7",
            "--maxM", "2", "--format", "json",
        )
        assert code == 0
        rows = json.loads(out)
        assert all(abs(r["value"]) < 1e6 for r in rows)

    def test_csv_header(self, capsys):
        code, out, _ = run(
            capsys, "eval", "--family", "inflation", "--t", "0.5", "--maxM", "1",
            "--format", "csv",
        )
        assert code == 0 and out.splitlines()[0] == "exponent,re,im,kind"

    def test_singularity_is_validation_error(self, capsys):
        code, _, err = run(
            capsys, "eval", "--family", "empty", "--H", "1", "--t", "0", "--maxM", "3"
        )
        assert code == cli.EXIT_VALIDATION


class TestPscc:
    def test_two_ball_no_pole_rows(self, capsys, tmp_path):
        path = tmp_path / "two-ball.json"
        path.write_text(json.dumps({"variant": "truncated", "radii": [[1, 1], [0.5, 1]]}))
        code, out, _ = run(capsys, "pscc", "--string", str(path), "--geometry", "s4")
        assert code == 0 and "pole" not in out.split("kind", 1)[1]

    def test_ford_reconcile(self, capsys):
        code, out, _ = run(capsys, "pscc", "--string", "ford", "--reconcile-paper")
        assert code == 0
        assert "4725*zeta(7)/(16*pi^8)" in out and "7/27" in out

    def test_ford_log_periodic_rows(self, capsys):
        code, out, _ = run(
            capsys, "pscc", "--string", "ford", "--geometry", "s4",
            "--lambda", "100", "--maxM", "2",
        )
        assert code == 0 and "ln X" in out

    def test_collision_is_validation_error(self, capsys):
        code, _, err = run(
            capsys, "pscc", "--string", "ford", "--geometry", "s4", "--maxM", "4"
        )
        assert code == cli.EXIT_VALIDATION and "collides" in err

    def test_bad_string(self, capsys):
        code, _, err = run(capsys, "pscc", "--string", "nope")
        assert code == cli.EXIT_VALIDATION

    def test_rw_geometry_heat_mode(self, capsys):
        code, out, _ = run(
            capsys, "pscc", "--string", "ford", "--geometry", "rw",
            "--family", "inflation", "--H", "1", "--t", "0.5",
            "--maxM", "2", "--mode", "heat",
        )
        assert code == 0 and "bulk" in out and "pole" in out

    def test_json_output_parses(self, capsys):
        code, out, _ = run(
            capsys, "pscc", "--string", "ford", "--geometry", "s4",
            "--maxM", "2", "--format", "json",
        )
        assert code == 0
        rows = json.loads(out)
        assert {"kind", "exponent", "coeff"} <= set(rows[0])


class TestVerify:
    def test_bridge_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "bridge", "--seed", "7", "--fast")
        assert code == 0 and "x1^2-exact" in out

    def test_deterministic_given_seed(self, capsys):
        code1, out1, _ = run(
            capsys, "verify", "--suite", "mellin", "--seed", "7", "--fast", "--format", "json"
        )
        code2, out2, _ = run(
            capsys, "verify", "--suite", "mellin", "--seed", "7", "--fast", "--format", "json"
        )
        assert code1 == code2 == 0 and out1 == out2

    def test_bell_suite_json(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--suite", "bell", "--seed", "1", "--fast", "--format", "json"
        )
        assert code == 0
        rep = json.loads(out)
        assert rep["pass"] is True


class TestConfig:
    def test_config_file_with_flag_override(self, capsys, tmp_path):
        cfgfile = tmp_path / "run.cfg"
        cfgfile.write_text("order=1\nform=ab\nformat=text\n")
        code, out, _ = run(capsys, "--config", str(cfgfile), "coeff")
        assert code == 0 and "A'^2" in out
        code, out, _ = run(capsys, "--config", str(cfgfile), "coeff", "--order", "0")
        assert code == 0 and out.strip() == "1/2 * B^(-3/2)"

    def test_unknown_config_key(self, capsys, tmp_path):
        cfgfile = tmp_path / "run.cfg"
        cfgfile.write_text("nonsense=1\n")
        code, _, err = run(capsys, "--config", str(cfgfile), "coeff", "--order", "0")
        assert code == cli.EXIT_VALIDATION
