"""CLI tests: output formats, exit codes, determinism."""

import re

import pytest

from gtbounds.cli import CSV_HEADER, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBoundCommand:
    def test_all_ones_at_half(self, capsys):
        code, out, _ = run_cli(capsys, "bound", "--delta", "0.5", "--epsilon", "0")
        assert code == 0
        for name in ("counting", "quantization", "individual", "main", "best_lower"):
            line = next(l for l in out.splitlines() if l.startswith(name))
            assert "1" in line.split()[1]

    def test_crossover_level(self, capsys):
        code, out, _ = run_cli(capsys, "bound", "--delta", "0.3471")
        main_line = next(l for l in out.splitlines() if l.startswith("main"))
        assert code == 0
        assert float(main_line.split()[1]) == pytest.approx(1.0, abs=2e-3)

    def test_middle_values(self, capsys):
        code, out, _ = run_cli(capsys, "bound", "--delta", "0.2", "--epsilon", "0")
        values = {}
        for line in out.splitlines()[1:]:
            parts = line.split()
            try:
                values[parts[0]] = float(parts[1])
            except ValueError:
                values[parts[0]] = None
        assert values["counting"] == pytest.approx(0.721928, abs=1e-5)
        assert values["quantization"] == pytest.approx(0.72223, abs=1e-4)
        assert values["main"] >= values["quantization"] - 1e-9
        assert values["individual"] is None  # NA below the cutoff
        assert values["adaptive_rate"] == pytest.approx(0.78, abs=1e-9)

    def test_invalid_delta_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["bound", "--delta", "1.5"])
        assert exc.value.code == 2
        assert "usage" in capsys.readouterr().err


class TestSweepCommand:
    def test_header_and_determinism(self, tmp_path, capsys):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["sweep", "--min", "0.30", "--max", "0.40", "--step", "0.005",
                "--epsilon", "0"]
        assert main(args + ["--out", str(out1)]) == 0
        assert main(args + ["--out", str(out2)]) == 0
        capsys.readouterr()
        a, b = out1.read_bytes(), out2.read_bytes()
        assert a == b
        assert a.decode().splitlines()[0] == CSV_HEADER

    def test_golden_header(self):
        assert CSV_HEADER == (
            "delta,epsilon,counting,quantization,individual,main,"
            "main_argmin_k,adaptive_rate,best_lower,gap_flag"
        )

    def test_single_point_grid(self, tmp_path, capsys):
        out = tmp_path / "half.csv"
        code = main(["sweep", "--min", "0.5", "--max", "0.5", "--step", "0.01",
                     "--out", str(out)])
        capsys.readouterr()
        assert code == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 2
        fields = lines[1].split(",")
        # counting, quantization, individual, main, best_lower all 1 at 0.5
        for idx in (2, 3, 4, 5, 8):
            assert float(fields[idx]) == pytest.approx(1.0, abs=1e-9)
        assert fields[9] == "false"

    def test_na_below_cutoff_and_flags(self, tmp_path, capsys):
        out = tmp_path / "g.csv"
        main(["sweep", "--min", "0.30", "--max", "0.40", "--step", "0.002",
              "--out", str(out)])
        capsys.readouterr()
        rows = [l.split(",") for l in out.read_text().splitlines()[1:]]
        for fields in rows:
            delta = float(fields[0])
            if delta < 0.3819:
                assert fields[4] == "NA"
            else:
                assert fields[4] != "NA"
            assert fields[9] in ("true", "false")
        flagged = [float(f[0]) for f in rows if f[9] == "true"]
        assert flagged and min(flagged) > 0.346 and max(flagged) < 0.382

    def test_svg_written_and_deterministic(self, tmp_path, capsys):
        args = ["sweep", "--min", "0.2", "--max", "0.4", "--step", "0.02",
                "--format", "svg"]
        p1, p2 = tmp_path / "x.csv", tmp_path / "y.csv"
        assert main(args + ["--out", str(p1)]) == 0
        assert main(args + ["--out", str(p2)]) == 0
        capsys.readouterr()
        svg1, svg2 = p1.with_suffix(".svg"), p2.with_suffix(".svg")
        assert svg1.exists()
        data = svg1.read_bytes()
        assert data == svg2.read_bytes()
        assert data.startswith(b"<?xml")
        for label in ("counting", "quantization", "individual", "main",
                      "adaptive_rate"):
            assert label.encode() in data

    def test_bad_step_exits_2(self, capsys):
        assert main(["sweep", "--step", "-1", "--out", "x.csv"]) == 2

    def test_unwritable_path_exits_3(self, capsys):
        code = main(["sweep", "--min", "0.4", "--max", "0.41", "--step", "0.01",
                     "--out", "/nonexistent-dir/x.csv"])
        assert code == 3


class TestVerifyCommand:
    def test_small_run_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--cases", "25", "--max-n", "8")
        assert code == 0
        assert re.search(r"^suite PASS: \d+ checks, 0 failures$", out, re.M)
        check_lines = [l for l in out.splitlines() if l.startswith("CHECK ")]
        assert check_lines
        pattern = re.compile(r"^CHECK \S+ lhs=\S+ rhs=\S+ slack=\S+ (PASS|FAIL)$")
        assert all(pattern.match(l) for l in check_lines)

    def test_reduced_max_n(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--cases", "10", "--max-n", "4")
        assert code == 0

    def test_negative_tolerance_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--tolerance", "-1e-9"])
        assert exc.value.code == 2

    def test_unattainable_tolerance_exits_1_with_failing_records(self, capsys):
        # zero tolerance cannot absorb float rounding, so checks fail honestly
        code, out, _ = run_cli(capsys, "verify", "--cases", "10", "--max-n", "5",
                               "--tolerance", "0")
        assert code == 1
        assert re.search(r"^CHECK \S+ .* FAIL$", out, re.M)
        assert re.search(r"^suite FAIL: \d+ checks, [1-9]\d* failures$", out, re.M)


class TestSimulateCommand:
    def test_statistical_run(self, capsys):
        code, out, _ = run_cli(
            capsys, "simulate", "--n", "1000", "--delta", "0.2",
            "--trials", "400", "--seed", "7",
        )
        assert code == 0
        z = float(re.search(r"^z_score=(\S+)$", out, re.M).group(1))
        errors = int(re.search(r"^decoding_errors=(\d+)$", out, re.M).group(1))
        assert abs(z) <= 4.0 and errors == 0

    def test_individual_branch(self, capsys):
        code, out, _ = run_cli(capsys, "simulate", "--delta", "0.5",
                               "--n", "200", "--trials", "10", "--seed", "1")
        assert code == 0
        assert re.search(r"^tests_per_item_mean=1$", out, re.M)

    def test_deterministic_stdout(self, capsys):
        args = ["simulate", "--n", "300", "--delta", "0.25",
                "--trials", "50", "--seed", "42"]
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2

    def test_env_seed_default(self, capsys, monkeypatch):
        monkeypatch.setenv("GTBOUNDS_SEED", "123")
        _, with_env, _ = run_cli(capsys, "simulate", "--delta", "0.2",
                                 "--n", "100", "--trials", "5")
        _, explicit, _ = run_cli(capsys, "simulate", "--delta", "0.2",
                                 "--n", "100", "--trials", "5", "--seed", "123")
        assert with_env == explicit


class TestGapCommand:
    def test_quoted_interval(self, capsys):
        code, out, _ = run_cli(capsys, "gap", "--epsilon", "0")
        assert code == 0
        m = re.search(r"adaptivity_gap=\((\d\.\d{5}), (\d\.\d{5})\)", out)
        assert m
        assert float(m.group(1)) == pytest.approx(0.3471, abs=5e-4)
        assert float(m.group(2)) == pytest.approx(0.38197, abs=1e-5)

    def test_empty_interval_notice(self, capsys):
        code, out, _ = run_cli(capsys, "gap", "--epsilon", "0.6")
        assert code == 0
        assert "empty interval" in out


class TestProbeCommand:
    def test_single_weight(self, capsys):
        code, out, _ = run_cli(capsys, "probe", "--delta", "0.3", "--kmax", "1")
        assert code == 0
        assert re.search(r"^gap=0$", out, re.M)

    def test_gap_reported(self, capsys):
        code, out, _ = run_cli(capsys, "probe", "--delta", "0.3", "--rate", "1.0",
                               "--kmax", "6", "--resolution", "200")
        assert code == 0
        gap = float(re.search(r"^gap=(\S+)$", out, re.M).group(1))
        assert gap >= -1e-9

    def test_deterministic(self, capsys):
        args = ["probe", "--delta", "0.25", "--kmax", "4", "--resolution", "50"]
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2

    def test_bad_resolution_exits_2(self, capsys):
        assert main(["probe", "--delta", "0.3", "--resolution", "5"]) == 2
