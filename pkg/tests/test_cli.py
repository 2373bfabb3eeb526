"""CLI contract: exit codes, formats, determinism, golden checks."""

import csv
import io
import json
import os
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from deltamachine import cli, golden, serialize
from deltamachine.spheres import probability_table

SRC = str(Path(__file__).resolve().parents[1] / "src")


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_json(out):
    return json.loads(out)


def parse_csv(out):
    rows = list(csv.reader(io.StringIO(out)))
    return rows[0], rows[1:]


class TestExitCodes:
    def test_success_is_zero(self, capsys):
        code, out, _ = run_cli(capsys, "tables", "--K", "3")
        assert code == 0 and "K = 3" in out

    def test_usage_error_is_two(self, capsys):
        assert run_cli(capsys, "tables")[0] == 2           # missing --K
        assert run_cli(capsys, "nonsense")[0] == 2         # unknown command
        assert run_cli(capsys, "tables", "--K", "0")[0] == 2
        assert run_cli(capsys, "tables", "--K", "65")[0] == 2
        assert run_cli(capsys, "simulate", "--kp", "2", "--km", "1", "--k", "4", "--n", "10")[0] == 2
        assert run_cli(capsys, "simulate", "--kp", "-1", "--km", "1", "--k", "1", "--n", "10")[0] == 2
        assert run_cli(capsys, "scatter")[0] == 2          # no energies
        assert run_cli(capsys, "scatter", "--E", "-3")[0] == 2
        assert run_cli(capsys, "epsilon", "--theta", "9", "--eps", "0.5")[0] == 2
        assert run_cli(capsys, "convergence", "--kp", "1", "--km", "1", "--k", "1", "--seed", "1", "--schedule", "0,10")[0] == 2

    def test_golden_outside_embedded_range_is_usage_error(self, capsys):
        assert run_cli(capsys, "tables", "--K", "9", "--golden")[0] == 2

    def test_golden_mismatch_is_three(self, capsys, monkeypatch):
        corrupted = dict(golden._RAW)
        corrupted[4] = (("0", "1/4", "1/2", "3/4", "1"),) * 2 + (
            ("0", "0", "1/3", "1", "1"),  # wrong balanced cell
            ("0", "0", "1/2", "1", "1"),
        )
        monkeypatch.setattr(golden, "_RAW", corrupted)
        code, _, err = run_cli(capsys, "tables", "--K", "4", "--golden")
        assert code == 3
        assert "golden mismatch" in err and "k=3" in err


class TestGoldenTables:
    @pytest.mark.parametrize("K", [2, 3, 4, 5, 6, 7])
    def test_embedded_tables_pass(self, capsys, K):
        code, out, err = run_cli(capsys, "tables", "--K", str(K), "--golden")
        assert code == 0, err
        assert "golden check passed" in out

    def test_golden_matches_library_values(self):
        for K in golden.GOLDEN_SIZES:
            table = probability_table(K)
            reference = golden.golden_table(K)
            for row, ref in zip(table.rows, reference):
                assert row.probabilities() == ref


class TestTables:
    def test_json_round_trips_to_exact_table(self, capsys):
        code, out, _ = run_cli(capsys, "tables", "--K", "7", "--format", "json")
        assert code == 0
        payload = parse_json(out)
        assert serialize.table_from_payload(payload) == probability_table(7)
        # spot-check a famous cell: k=3 at energy 4/3 is 22/35
        cell = payload["rows"][2]["cells"][4]
        assert (cell["num"], cell["den"]) == (22, 35)

    def test_single_sphere_text_row(self, capsys):
        code, out, _ = run_cli(capsys, "tables", "--K", "1")
        assert code == 0
        assert out.splitlines()[1].split() == ["k\\E", "0", "inf"]
        assert out.splitlines()[2].split() == ["1", "0", "1"]

    def test_csv_and_json_values_identical(self, capsys):
        _, json_out, _ = run_cli(capsys, "tables", "--K", "5", "--format", "json")
        _, csv_out, _ = run_cli(capsys, "tables", "--K", "5", "--format", "csv")
        payload = parse_json(json_out)
        header, rows = parse_csv(csv_out)
        cells = {
            (int(r[0]), int(r[1])): Fraction(int(r[3]), int(r[4])) for r in rows
        }
        for row in payload["rows"]:
            for k_plus, cell in enumerate(row["cells"]):
                assert cells[(row["k"], k_plus)] == Fraction(cell["num"], cell["den"])

    def test_ceiling_flag_and_env(self, capsys, monkeypatch):
        assert run_cli(capsys, "tables", "--K", "65", "--ceiling", "70")[0] == 0
        monkeypatch.setenv(cli.ENV_CEILING, "70")
        assert run_cli(capsys, "tables", "--K", "65")[0] == 0
        monkeypatch.setenv(cli.ENV_CEILING, "10")
        assert run_cli(capsys, "tables", "--K", "11")[0] == 2
        monkeypatch.setenv(cli.ENV_CEILING, "not-a-number")
        assert run_cli(capsys, "tables", "--K", "3")[0] == 2


class TestSimulate:
    ARGS = ("simulate", "--kp", "2", "--km", "1", "--k", "1", "--n", "2000", "--seed", "42")

    def test_report_contains_exact_expectation(self, capsys):
        code, out, _ = run_cli(capsys, *self.ARGS, "--format", "json")
        assert code == 0
        payload = parse_json(out)
        assert payload["expected"] == {"num": 2, "den": 3, "decimal": 2 / 3}
        assert payload["result"]["seed"] == 42
        assert payload["result"]["generator"] == "splitmix64"

    def test_reruns_byte_identical(self, capsys):
        _, first, _ = run_cli(capsys, *self.ARGS)
        _, second, _ = run_cli(capsys, *self.ARGS)
        assert first == second

    def test_deterministic_cell_is_exact_zero(self, capsys):
        code, out, _ = run_cli(
            capsys, "simulate", "--kp", "0", "--km", "4", "--k", "2", "--n", "10",
            "--seed", "1", "--format", "json",
        )
        assert code == 0
        assert parse_json(out)["result"]["transmitted"] == 0

    def test_random_seed_recorded_when_omitted(self, capsys):
        code, out, _ = run_cli(
            capsys, "simulate", "--kp", "1", "--km", "1", "--k", "1", "--n", "10",
            "--format", "json",
        )
        assert code == 0
        payload = parse_json(out)
        assert isinstance(payload["result"]["seed"], int)

    def test_csv_matches_json(self, capsys):
        _, json_out, _ = run_cli(capsys, *self.ARGS, "--format", "json")
        _, csv_out, _ = run_cli(capsys, *self.ARGS, "--format", "csv")
        payload = parse_json(json_out)
        header, rows = parse_csv(csv_out)
        record = dict(zip(header, rows[0]))
        assert int(record["transmitted"]) == payload["result"]["transmitted"]
        assert int(record["frequency_num"]) == payload["result"]["frequency"]["num"]
        assert float(record["half_width"]) == payload["result"]["half_width"]


class TestScatter:
    def test_unit_energy(self, capsys):
        code, out, _ = run_cli(capsys, "scatter", "--E", "1", "--format", "json")
        assert code == 0
        point = parse_json(out)["points"][0]
        assert point["p_transmission"] == 0.5
        assert point["jump_residual"] < 1e-12

    def test_grid_expansion(self, capsys):
        code, out, _ = run_cli(
            capsys, "scatter", "--grid", "1:5:5", "--format", "json"
        )
        assert code == 0
        energies = [p["energy"] for p in parse_json(out)["points"]]
        assert energies == [1.0, 2.0, 3.0, 4.0, 5.0]

    def test_csv_matches_json(self, capsys):
        _, json_out, _ = run_cli(capsys, "scatter", "--E", "4", "--format", "json")
        _, csv_out, _ = run_cli(capsys, "scatter", "--E", "4", "--format", "csv")
        point = parse_json(json_out)["points"][0]
        header, rows = parse_csv(csv_out)
        record = dict(zip(header, rows[0]))
        assert float(record["p_tr"]) == point["p_transmission"]
        assert float(record["t_re"]) == point["transmission"]["re"]

    def test_coupling_flag(self, capsys):
        code, out, _ = run_cli(
            capsys, "scatter", "--E", "4", "--coupling", "2", "--format", "json"
        )
        assert code == 0
        assert parse_json(out)["points"][0]["p_transmission"] == 0.5


class TestEpsilon:
    def test_closed_form_only(self, capsys):
        code, out, _ = run_cli(
            capsys, "epsilon", "--theta", "0", "--eps", "0.3", "--format", "json"
        )
        assert code == 0
        payload = parse_json(out)
        assert payload["closed_form"]["p_plus"] == 1.0
        assert payload["simulation"] is None

    def test_with_simulation(self, capsys):
        code, out, _ = run_cli(
            capsys, "epsilon", "--theta", "1.5707963267948966", "--eps", "1",
            "--n", "2000", "--seed", "5", "--format", "json",
        )
        assert code == 0
        sim = parse_json(out)["simulation"]
        assert sim["n_trials"] == 2000 and sim["seed"] == 5
        assert abs(sim["frequency"]["decimal"] - 0.5) < 0.05

    def test_csv_matches_json(self, capsys):
        args = ("epsilon", "--theta", "0.8", "--eps", "0.6", "--n", "500", "--seed", "3")
        _, json_out, _ = run_cli(capsys, *args, "--format", "json")
        _, csv_out, _ = run_cli(capsys, *args, "--format", "csv")
        payload = parse_json(json_out)
        header, rows = parse_csv(csv_out)
        record = dict(zip(header, rows[0]))
        assert float(record["p_plus"]) == payload["closed_form"]["p_plus"]
        assert int(record["transmitted"]) == payload["simulation"]["transmitted"]
        assert float(record["half_width"]) == payload["simulation"]["half_width"]


class TestClassify:
    def test_json_verdict_mapping(self, capsys):
        code, out, _ = run_cli(capsys, "classify", "--K", "5", "--format", "json")
        assert code == 0
        payload = parse_json(out)
        assert payload["verdicts"] == {
            "1": "Quantum",
            "2": "Quantum",
            "3": "Intermediate",
            "4": "Intermediate",
            "5": "Classical",
        }
        restored = serialize.verdicts_from_payload(payload)
        assert restored[3].witnesses[0].state.k_plus == 1

    def test_text_lists_witnesses(self, capsys):
        code, out, _ = run_cli(capsys, "classify", "--K", "5")
        assert code == 0
        assert "k=3: Intermediate" in out
        assert "NonQuantumZeroTransmission(1/4)" in out


class TestConvergence:
    def test_series_shrinks_half_width(self, capsys):
        code, out, _ = run_cli(
            capsys, "convergence", "--kp", "2", "--km", "1", "--k", "1",
            "--seed", "3", "--schedule", "100,1000,10000", "--format", "json",
        )
        assert code == 0
        payload = parse_json(out)
        widths = [e["half_width"] for e in payload["series"]]
        assert widths[0] > widths[1] > widths[2]

    def test_prefix_consistency(self, capsys):
        # Counter-mode per-trial seeds: the first 100 trials of a longer run
        # are the 100-trial run.
        _, out_small, _ = run_cli(
            capsys, "convergence", "--kp", "2", "--km", "1", "--k", "1",
            "--seed", "9", "--schedule", "100", "--format", "json",
        )
        _, out_big, _ = run_cli(
            capsys, "convergence", "--kp", "2", "--km", "1", "--k", "1",
            "--seed", "9", "--schedule", "100,400", "--format", "json",
        )
        small = parse_json(out_small)["series"][0]
        big = parse_json(out_big)["series"][0]
        assert small["transmitted"] == big["transmitted"]

    def test_default_schedule(self, capsys):
        code, out, _ = run_cli(
            capsys, "convergence", "--kp", "1", "--km", "1", "--k", "1",
            "--seed", "2", "--schedule", "10,20", "--format", "json",
        )
        assert code == 0
        assert parse_json(out)["schedule"] == [10, 20]
        assert cli.DEFAULT_SCHEDULE == (100, 1000, 10_000, 100_000)

    def test_csv_matches_json(self, capsys):
        args = ("convergence", "--kp", "3", "--km", "1", "--k", "2",
                "--seed", "6", "--schedule", "50,200")
        _, json_out, _ = run_cli(capsys, *args, "--format", "json")
        _, csv_out, _ = run_cli(capsys, *args, "--format", "csv")
        series = parse_json(json_out)["series"]
        header, rows = parse_csv(csv_out)
        assert len(rows) == len(series)
        for row, entry in zip(rows, series):
            record = dict(zip(header, row))
            assert int(record["transmitted"]) == entry["transmitted"]
            assert float(record["abs_error"]) == entry["abs_error"]


class TestOutputDestinations:
    def test_output_flag_writes_file(self, capsys, tmp_path):
        target = tmp_path / "table.json"
        code, out, _ = run_cli(
            capsys, "tables", "--K", "3", "--format", "json", "--output", str(target)
        )
        assert code == 0 and out == ""
        assert serialize.table_from_payload(json.loads(target.read_text())) == probability_table(3)

    def test_env_output_used_as_default(self, capsys, tmp_path, monkeypatch):
        target = tmp_path / "out.txt"
        monkeypatch.setenv(cli.ENV_OUTPUT, str(target))
        code, out, _ = run_cli(capsys, "tables", "--K", "2")
        assert code == 0 and out == ""
        assert "K = 2" in target.read_text()


def test_module_entry_point_runs():
    env = dict(os.environ, PYTHONPATH=SRC)
    proc = subprocess.run(
        [sys.executable, "-m", "deltamachine", "tables", "--K", "3", "--golden"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert proc.returncode == 0
    assert "golden check passed" in proc.stdout
