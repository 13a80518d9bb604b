"""Benchmark harness: timing reports and the deterministic analysis document."""

import json
import statistics

import pytest

from unicorn_ascent import bench


class TestTiming:
    def test_single_run_collapses_min_mean_max(self):
        report = bench.time_simulator(runs=1, seed=1)
        assert report.min_s == report.mean_s == report.max_s

    def test_ordering_invariant(self):
        report = bench.time_simulator(runs=20, seed=2)
        assert report.min_s <= report.mean_s <= report.max_s

    def test_grover_program_costs_more_than_single_qubit(self):
        # 16 amplitudes vs 2: the 4-qubit program must not be cheaper
        single = statistics.median(bench.time_program(bench._single_qubit_program, 50, seed=3))
        grover = statistics.median(bench.time_program(bench._grover_program, 50, seed=4))
        assert grover >= single

    def test_runs_validated(self):
        with pytest.raises(ValueError):
            bench.time_program(bench._single_qubit_program, 0)


@pytest.fixture(scope="module")
def report():
    return bench.run_full_report(
        seed=2019,
        curve_shots=20_000,
        sweep_trials=200,
        bias_shots=4096,
        bias_trials=1500,
        buffer_trials=400,
        minigame_games=120,
    )


class TestFullReport:
    def test_sections_present(self, report):
        assert set(report) == {
            "seed",
            "inversion_curve",
            "grover_noise_sweep",
            "rng_bias",
            "error_buffer_win_rates",
            "minigame_comparison",
        }

    def test_inversion_curve_hits_half_at_half(self, report):
        row = next(r for r in report["inversion_curve"] if r["frac"] == 0.5)
        assert row["analytic_p1"] == pytest.approx(0.5, abs=1e-12)
        assert abs(row["empirical_p1"] - 0.5) < 0.02

    def test_grover_sweep_degrades_with_noise(self, report):
        rows = {r["flip_prob"]: r["success_rate"] for r in report["grover_noise_sweep"]}
        assert rows[0.0] >= rows[0.25] >= rows[0.5]

    def test_bias_section_keeps_max_value_impossible(self, report):
        row = next(r for r in report["rng_bias"] if r["value"] == 15)
        assert row["frequency"] == 0.0

    def test_error_buffer_section_shows_the_point_of_the_buffer(self, report):
        rows = {r["scenario"]: r for r in report["error_buffer_win_rates"]}
        assert rows["simulator"]["win_rate"] == 1.0
        assert rows["hardware-emulation"]["win_rate"] >= 0.99
        assert rows["hardware-emulation-no-buffer"]["win_rate"] == 0.0

    def test_minigame_comparison_shows_quantum_advantage(self, report):
        rows = {r["variant"]: r for r in report["minigame_comparison"]}
        assert rows["quantum"]["mean_rounds"] < rows["classical"]["mean_rounds"]
        assert rows["classical"]["max_rounds"] <= 14

    def test_deterministic_for_fixed_seed(self, report):
        again = bench.run_full_report(
            seed=2019,
            curve_shots=20_000,
            sweep_trials=200,
            bias_shots=4096,
            bias_trials=1500,
            buffer_trials=400,
            minigame_games=120,
        )
        assert json.dumps(report) == json.dumps(again)


class TestReportFiles:
    def test_write_json_and_csv(self, report, tmp_path):
        doc = dict(report)
        bench.attach_timing(doc, runs=3, seed=5)
        json_path, csv_path = bench.write_report(doc, tmp_path / "out")
        loaded = json.loads(json_path.read_text())
        assert loaded["execution_timing"]["simulator"]["runs"] == 3
        assert loaded["execution_timing"]["hardware_reference"]["rows"]
        lines = csv_path.read_text().splitlines()
        assert lines[0] == "section,row,field,value"
        assert any(line.startswith("inversion_curve,") for line in lines)
        assert any(line.startswith("execution_timing,") for line in lines)

    def test_write_failure_reports_path(self, report, tmp_path):
        target = tmp_path / "blocked"
        target.write_text("a file, not a directory")
        with pytest.raises(OSError) as err:
            bench.write_report(dict(report), target / "sub")
        assert "blocked" in str(err.value)
