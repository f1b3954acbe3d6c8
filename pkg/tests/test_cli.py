"""Command-line contract: artifacts, determinism, exit codes."""

import csv
import json

import pytest

from opcalc.cli import main


class TestVerifyCommand:
    def test_default_run_passes_and_is_deterministic(self, tmp_path):
        out1 = tmp_path / "r1.json"
        out2 = tmp_path / "r2.json"
        assert main(["verify", "--out", str(out1)]) == 0
        assert main(["verify", "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()
        report = json.loads(out1.read_text())
        assert report["all_pass"] is True
        assert report["schema_version"] == 1
        formulas = report["sections"]["formulas"]
        assert {e["formula"] for e in formulas} == {"F1", "F2", "F3"}
        assert all(set(e) >= {"formula", "n", "m", "residual_is_zero"}
                   for e in formulas)
        matrix = report["sections"]["matrix"]
        assert all(set(e) >= {"identity_id", "dim", "margin", "residual"}
                   for e in matrix)

    def test_missing_config_exits_2(self, capsys):
        assert main(["verify", "--config", "/no/such/file.json"]) == 2
        assert "config" in capsys.readouterr().err

    def test_malformed_config_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert main(["verify", "--config", str(bad)]) == 2
        assert "malformed" in capsys.readouterr().err

    def test_exploratory_jacobi_never_fails_run(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"exploratory_nonstandard_jacobi": True}))
        out = tmp_path / "r.json"
        assert main(["verify", "--config", str(cfg), "--out", str(out)]) == 0
        report = json.loads(out.read_text())
        entries = report["sections"]["exploratory"]
        assert entries and all(e["status"] == "exploratory" for e in entries)
        assert any(not e["residual_zero"] for e in entries)


class TestHybridCommand:
    def test_default_run(self, tmp_path):
        out = tmp_path / "hyb"
        code = main(["hybrid", "--m", "1", "--M", "2", "--alpha", "1",
                     "--hbar", "1", "--t-end", "2.0", "--dt", "1e-3",
                     "--out", str(out)])
        assert code == 0
        report = json.loads((out / "report.json").read_text())
        assert report["checks_pass"] is True
        assert report["max_coefficient_error_vs_analytic"] < 1e-8
        with (out / "pos_c.csv").open() as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["t", "u_x", "u_p", "u_X", "u_P", "u_1"]
        assert float(rows[1][1]) == 1.0  # x starts as the pure x0 vector
        for stem in ("mom_c", "pos_q", "mom_q", "total_mom"):
            assert (out / f"{stem}.csv").exists()

    def test_alpha_zero_reports_noninteracting(self, tmp_path):
        out = tmp_path / "free"
        code = main(["hybrid", "--alpha", "0", "--t-end", "1.0",
                     "--out", str(out)])
        assert code == 0
        report = json.loads((out / "report.json").read_text())
        assert report["noninteracting"]["max_free_solution_error"] == 0.0

    def test_zero_dt_exits_2(self, tmp_path):
        assert main(["hybrid", "--dt", "0", "--out", str(tmp_path)]) == 2

    def test_negative_mass_exits_2(self, tmp_path):
        assert main(["hybrid", "--m", "-1", "--out", str(tmp_path)]) == 2


class TestWignerCommand:
    def test_harmonic_default(self, tmp_path):
        out = tmp_path / "wig"
        code = main(["wigner", "--t-end", "0.05", "--out", str(out)])
        assert code == 0
        report = json.loads((out / "report.json").read_text())
        assert report["consistency_residual"] < 1e-3
        assert report["active_higher_orders"] == []
        with (out / "wigner_initial.csv").open() as fh:
            header = fh.readline().split(",")
        assert header[0] == "x\\p"
        assert (out / "wigner_final.csv").exists()

    def test_quartic_reports_higher_order(self, tmp_path):
        out = tmp_path / "wigq"
        code = main(["wigner", "--potential", "0,0,0,0,0.25",
                     "--t-end", "0.05", "--out", str(out)])
        assert code == 0
        report = json.loads((out / "report.json").read_text())
        assert report["active_higher_orders"] == [3]
        assert report["consistency_residual"] < 5e-3

    def test_bad_state_exits_2(self, tmp_path):
        with pytest.raises(SystemExit) as err:
            main(["wigner", "--state", "plane:1", "--out", str(tmp_path)])
        assert err.value.code == 2

    def test_bad_dt_exits_2(self, tmp_path):
        assert main(["wigner", "--dt", "0", "--out", str(tmp_path)]) == 2


class TestLindbladCommand:
    def test_default_run(self, tmp_path, capsys):
        out = tmp_path / "lin.json"
        assert main(["lindblad", "--dim", "30", "--out", str(out)]) == 0
        report = json.loads(out.read_text())
        assert report["numeric_residual"] < 1e-12
        assert report["symbolic_residual_zero"] is True

    def test_small_dim_exits_2(self):
        assert main(["lindblad", "--dim", "2"]) == 2


def test_unknown_command_exits_2():
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 2
