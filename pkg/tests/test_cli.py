import json
import math
from pathlib import Path

import pytest

from striplex import cli, verify
from striplex.construction import u_interior

REPO = Path(__file__).resolve().parent.parent
VEE = str(REPO / "data" / "splines" / "vee.spline")
GOLDEN = Path(__file__).resolve().parent / "golden" / "construct_standard.csv"

STANDARD = ["--spline", VEE, "--L", "2", "--delta", "0.1"]


class TestParams:
    def test_admitted(self, capsys):
        assert cli.main(["params", *STANDARD]) == 0
        out = capsys.readouterr().out
        for key in (
            "L_f",
            "Lf_prime",
            "D",
            "delta_touch",
            "delta_banach",
            "delta",
            "contraction_q",
            "lip_Y_bound",
        ):
            assert f"{key} = " in out
        assert "admitted = true" in out

    def test_delta_frac_takes_half_the_cap(self, capsys):
        assert cli.main(["params", "--spline", VEE, "--L", "2", "--delta-frac", "0.5"]) == 0
        out = capsys.readouterr().out
        delta = float(out.split("delta = ")[1].split("\n")[0])
        touch = float(out.split("delta_touch = ")[1].split("\n")[0])
        banach = float(out.split("delta_banach = ")[1].split("\n")[0])
        assert delta == pytest.approx(0.5 * min(touch, banach), rel=1e-15)

    def test_invalid_parameters_exit_1(self, capsys):
        assert cli.main(["params", "--spline", VEE, "--L", "0.4", "--delta", "0.1"]) == 1

    def test_delta_at_cap_exit_2(self, capsys):
        assert cli.main(["params", "--spline", VEE, "--L", "2", "--delta", "2.7478119275391819"]) == 2
        out = capsys.readouterr().out
        assert "delta_touch" in out

    def test_missing_file_exit_1(self, capsys):
        assert cli.main(["params", "--spline", "/nonexistent.spline", "--L", "2", "--delta", "0.1"]) == 1

    def test_bad_delta_frac_exit_1(self, capsys):
        assert cli.main(["params", "--spline", VEE, "--L", "2", "--delta-frac", "1.5"]) == 1

    def test_usage_errors_exit_1(self, capsys):
        assert cli.main(["params", "--spline", VEE, "--L", "2"]) == 1  # no delta at all
        assert cli.main(["params", "--spline", VEE, "--L", "2", "--delta", "0.1", "--delta-frac", "0.5"]) == 1
        assert cli.main(["frobnicate"]) == 1


class TestConstruct:
    def test_constant_profile_column(self, tmp_path, capsys):
        spline = tmp_path / "zero.spline"
        spline.write_text("f0 0\nknot 0 0\n")
        out = tmp_path / "c.csv"
        code = cli.main(
            ["construct", "--spline", str(spline), "--L", "2", "--delta", "0.1", "--nx", "9", "--out", str(out)]
        )
        assert code == 0
        lines = out.read_text().strip().split("\n")
        assert lines[0] == "x,y,Y,u,uprime"
        assert len(lines) == 10
        for line in lines[1:]:
            x, y, Y, u, uprime = (float(v) for v in line.split(","))
            assert u == pytest.approx(-0.2, abs=1e-15)
            assert Y == 0.0 and x == y and uprime == 0.0

    def test_linear_profile_column(self, tmp_path, capsys):
        spline = tmp_path / "ramp.spline"
        spline.write_text("f0 0\nknot 0 1\n")
        out = tmp_path / "c.csv"
        assert (
            cli.main(
                ["construct", "--spline", str(spline), "--L", "2", "--delta", "0.1", "--nx", "5", "--out", str(out)]
            )
            == 0
        )
        for line in out.read_text().strip().split("\n")[1:]:
            x, y, Y, u, uprime = (float(v) for v in line.split(","))
            assert u == pytest.approx(x - 0.1 * math.sqrt(3.0), abs=1e-13)
            assert uprime == 1.0

    def test_deterministic_bytes(self, tmp_path, capsys):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for out in (a, b):
            assert cli.main(["construct", *STANDARD, "--nx", "33", "--out", str(out)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_golden_file(self, tmp_path, capsys):
        out = tmp_path / "standard.csv"
        assert cli.main(["construct", *STANDARD, "--nx", "257", "--out", str(out)]) == 0
        assert out.read_bytes() == GOLDEN.read_bytes()

    def test_out_required(self, capsys):
        assert cli.main(["construct", *STANDARD]) == 1


class TestGrid:
    def test_constant_grid_rows(self, tmp_path, capsys):
        spline = tmp_path / "zero.spline"
        spline.write_text("f0 0\nknot 0 0\n")
        out = tmp_path / "g.csv"
        code = cli.main(
            [
                "grid", "--spline", str(spline), "--L", "2", "--delta", "0.1",
                "--nx", "3", "--nd", "3", "--out", str(out),
            ]
        )
        assert code == 0
        lines = out.read_text().strip().split("\n")
        assert lines[0] == "x,d,u,provenance"
        assert len(lines) == 10
        for line in lines[1:]:
            x, d, u, prov = line.split(",")
            assert float(u) == pytest.approx(-2.0 * float(d), abs=1e-15)
            assert prov == "closed_form"

    def test_formats_carry_identical_numbers(self, tmp_path, capsys):
        csv_out, json_out = tmp_path / "g.csv", tmp_path / "g.json"
        base = ["grid", *STANDARD, "--nx", "4", "--nd", "3"]
        assert cli.main([*base, "--out", str(csv_out)]) == 0
        assert cli.main([*base, "--format", "structured", "--out", str(json_out)]) == 0
        doc = json.loads(json_out.read_text())
        rows = csv_out.read_text().strip().split("\n")[1:]
        assert len(doc["rows"]) == len(rows)
        for row, line in zip(doc["rows"], rows):
            x, d, u, _ = line.split(",")
            assert (row["x"], row["d"], row["u"]) == (float(x), float(d), float(u))

    def test_brute_force_provenance(self, tmp_path, capsys):
        out = tmp_path / "g.csv"
        code = cli.main(
            ["grid", *STANDARD, "--nx", "3", "--nd", "2", "--hy", "1e-4", "--provenance", "brute_force", "--out", str(out)]
        )
        assert code == 0
        assert out.read_text().strip().split("\n")[1].endswith("brute_force")


class TestReport:
    def test_vee_report_row(self, tmp_path, capsys):
        out = tmp_path / "r.csv"
        assert cli.main(["report", *STANDARD, "--out", str(out)]) == 0
        lines = out.read_text().strip().split("\n")
        assert len(lines) == 2
        vals = dict(zip(lines[0].split(","), (float(v) for v in lines[1].split(","))))
        assert vals["y0"] == 0.0 and vals["x0"] == 0.0
        assert vals["upp_minus_pred"] == pytest.approx(-0.5 / 1.025, rel=1e-15)
        assert vals["upp_plus_pred"] == pytest.approx(0.5 / 0.975, rel=1e-15)
        assert vals["upp_minus_fd"] == pytest.approx(-0.5 / 1.025, rel=1e-2)
        assert vals["upp_plus_fd"] == pytest.approx(0.5 / 0.975, rel=1e-2)

    def test_formats_match(self, tmp_path, capsys):
        csv_out, json_out = tmp_path / "r.csv", tmp_path / "r.json"
        assert cli.main(["report", *STANDARD, "--out", str(csv_out)]) == 0
        assert cli.main(["report", *STANDARD, "--format", "structured", "--out", str(json_out)]) == 0
        doc = json.loads(json_out.read_text())
        header, row = csv_out.read_text().strip().split("\n")
        for c, v in zip(header.split(","), row.split(",")):
            assert doc["rows"][0][c] == float(v)


class TestVerify:
    def test_no_kink_profile_skips_and_passes(self, tmp_path, capsys):
        spline = tmp_path / "zero.spline"
        spline.write_text("f0 0\nknot 0 0\n")
        code = cli.main(
            ["verify", "--spline", str(spline), "--L", "2", "--delta", "0.1", "--nx", "5", "--nd", "2"]
        )
        out = capsys.readouterr().out
        assert code == 0
        assert "SKIP kink_transfer" in out
        assert "FAIL" not in out

    def test_failure_maps_to_exit_3(self, monkeypatch, capsys):
        monkeypatch.setattr(
            verify, "run_acceptance", lambda problem, config=None: [verify.CheckResult("stub", "FAIL", "injected")]
        )
        assert cli.main(["verify", *STANDARD, "--nx", "5", "--nd", "2"]) == 3

    def test_corrupted_evaluator_fails_oracle_equivalence(self, vee_problem):
        # small grid keeps the negative control cheap
        from striplex.oracle import GridSpec

        spec = GridSpec(xmin=-1.0, xmax=1.0, nx=5, nd=2, h_y=1e-5, margin=10 * vee_problem.D * 0.1)
        corrupted = lambda x, d: u_interior(x, d, vee_problem) + 1e-6
        res, _ = verify.check_oracle_equivalence(vee_problem, spec, corrupted)
        assert res.status == "FAIL"
        honest = lambda x, d: u_interior(x, d, vee_problem)
        res, _ = verify.check_oracle_equivalence(vee_problem, spec, honest)
        assert res.status == "PASS"
