import json
import subprocess
import sys
from pathlib import Path

import pytest

EX1 = {
    "model": "objective",
    "capacity": 20,
    "leader": [9, 8, 5, 3],
    "follower": [12, 11, 10, 4],
}

FIG1A = {
    "weights": [
        {"base": 9, "eps_coeff": 1},
        {"base": 8, "eps_coeff": 1},
        {"base": 0, "eps_coeff": 0},
        {"base": 0, "eps_coeff": 0},
    ]
}

FIG1B = {
    "weights": [
        {"base": 0, "eps_coeff": 0},
        {"base": 8, "eps_coeff": 1},
        {"base": 0, "eps_coeff": 0},
        {"base": 3, "eps_coeff": 1},
    ]
}


def run_cli(*args: str):
    return subprocess.run(
        [sys.executable, "-m", "stacksum", *args],
        capture_output=True,
        text=True,
    )


def write(tmp_path: Path, name: str, data) -> str:
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


@pytest.fixture
def ex1_file(tmp_path):
    return write(tmp_path, "ex1.json", EX1)


class TestSolve:
    def test_reference_dp(self, ex1_file):
        proc = run_cli("solve", ex1_file)
        assert proc.returncode == 0
        report = json.loads(proc.stdout)
        assert report["value"] == {"base": 5, "eps_coeff": -2}
        assert report["algorithm"] == "dp"
        assert report["replay_confirmed"] is True
        assert report["structure"]["before_weights"] == [8, 3]
        assert report["structure"]["after_weights"] == [5]
        assert report["structure"]["follower_fill"] == 4

    def test_oracle_matches(self, ex1_file):
        proc = run_cli("solve", ex1_file, "--algorithm", "oracle")
        assert proc.returncode == 0
        report = json.loads(proc.stdout)
        assert report["value"]["base"] == 5
        assert report["replay_confirmed"] is True
        assert report["enumerated_strategies"] > 0

    def test_empty_leader_constraint(self, tmp_path):
        path = write(
            tmp_path,
            "empty.json",
            {"model": "constraint", "capacity": 10, "leader": [], "follower": [4]},
        )
        proc = run_cli("solve", path)
        assert proc.returncode == 0
        report = json.loads(proc.stdout)
        assert report["value"] == {"base": 0, "eps_coeff": 0}

    def test_model_override_and_batched(self, ex1_file):
        proc = run_cli("solve", ex1_file, "--model", "constraint",
                       "--algorithm", "dp-batched")
        assert proc.returncode == 0
        report = json.loads(proc.stdout)
        assert report["model"] == "constraint"
        assert report["replay_confirmed"] is True

    def test_closed_form_models(self, ex1_file):
        for model in ("constraint-simple", "lp-objective", "lp-constraint",
                      "lp-constraint-simple"):
            proc = run_cli("solve", ex1_file, "--model", model)
            assert proc.returncode == 0, proc.stderr
            report = json.loads(proc.stdout)
            assert report["algorithm"] == "closed-form"
            assert "branch" in report

    def test_validation_error_names_field(self, tmp_path):
        path = write(
            tmp_path,
            "bad.json",
            {"model": "objective", "capacity": 5, "leader": [0], "follower": [3]},
        )
        proc = run_cli("solve", path)
        assert proc.returncode == 2
        assert "leader[0]" in proc.stderr

    def test_incompatible_algorithm(self, ex1_file):
        proc = run_cli("solve", ex1_file, "--model", "lp-objective",
                       "--algorithm", "dp")
        assert proc.returncode == 3

    def test_oracle_size_limit(self, tmp_path):
        path = write(
            tmp_path,
            "big.json",
            {"model": "objective", "capacity": 10, "leader": [1] * 17,
             "follower": [2]},
        )
        proc = run_cli("solve", path, "--algorithm", "oracle")
        assert proc.returncode == 4


class TestVerify:
    def test_correct_claim(self, tmp_path, ex1_file):
        wa = write(tmp_path, "b.json", FIG1B)
        proc = run_cli("verify", ex1_file, wa, "--claim", "5,-2")
        assert proc.returncode == 0
        report = json.loads(proc.stdout)
        assert report["claim_matched"] is True
        assert report["leader_payoff"] == {"base": 5, "eps_coeff": -2}

    def test_wrong_claim(self, tmp_path, ex1_file):
        wa = write(tmp_path, "a.json", FIG1A)
        proc = run_cli("verify", ex1_file, wa, "--claim", "5,-2")
        assert proc.returncode == 1
        report = json.loads(proc.stdout)
        assert report["leader_payoff"] == {"base": 3, "eps_coeff": -2}

    def test_trace_is_emitted(self, tmp_path, ex1_file):
        wa = write(tmp_path, "b.json", FIG1B)
        proc = run_cli("verify", ex1_file, wa)
        report = json.loads(proc.stdout)
        assert len(report["trace"]) == 8
        assert {"item", "rank", "packed", "residual"} <= set(report["trace"][0])

    def test_identity_constraint_claim_zero(self, tmp_path):
        inst = {"model": "constraint", "capacity": 10, "leader": [3, 4],
                "follower": [5]}
        path = write(tmp_path, "c.json", inst)
        wa = write(
            tmp_path,
            "id.json",
            {"weights": [{"base": 3, "eps_coeff": 0}, {"base": 4, "eps_coeff": 0}]},
        )
        proc = run_cli("verify", path, wa, "--claim", "0,0")
        assert proc.returncode == 0

    def test_malformed_assignment(self, tmp_path, ex1_file):
        bad = tmp_path / "bad.json"
        bad.write_text('{"weights": "nope"}')
        proc = run_cli("verify", ex1_file, str(bad))
        assert proc.returncode == 2


class TestGenerate:
    def test_partition_gadget(self, tmp_path):
        out = tmp_path / "g.json"
        proc = run_cli("generate", "--from-partition", "1,2,3", "--theorem", "2",
                       "--M", "100", "-o", str(out))
        assert proc.returncode == 0
        data = json.loads(out.read_text())
        assert data["capacity"] == 103
        assert data["leader"] == [1, 2, 3, 100]
        assert data["follower"] == [101]
        assert data["provenance"]["theorem"] == 2

    def test_constraint_gadget_roundtrips_through_solve(self, tmp_path):
        out = tmp_path / "g4.json"
        proc = run_cli("generate", "--from-partition", "{1,1}", "--theorem", "4",
                       "-o", str(out))
        assert proc.returncode == 0
        solve = run_cli("solve", str(out))
        report = json.loads(solve.stdout)
        assert report["value"]["base"] == 1

    def test_odd_sum_exits_2(self):
        proc = run_cli("generate", "--from-partition", "1,2", "--theorem", "2")
        assert proc.returncode == 2

    def test_even_sum_two_twos_is_fine(self):
        proc = run_cli("generate", "--from-partition", "{2,2}", "--theorem", "2")
        assert proc.returncode == 0

    def test_random_is_deterministic(self, tmp_path):
        a = run_cli("generate", "--random", "4", "4", "12", "20", "--seed", "7")
        b = run_cli("generate", "--random", "4", "4", "12", "20", "--seed", "7")
        assert a.returncode == 0 and a.stdout == b.stdout
        data = json.loads(a.stdout)
        assert len(data["leader"]) == 4 and len(data["follower"]) == 4

    def test_random_requires_seed(self):
        proc = run_cli("generate", "--random", "4", "4", "12", "20")
        assert proc.returncode == 2


class TestBench:
    def test_degenerate_single_size(self):
        proc = run_cli("bench", "--sizes", "1", "--capacity", "50", "--seed", "3")
        assert proc.returncode == 0
        rows = json.loads(proc.stdout)["rows"]
        assert rows[0]["naive_cell_updates"] == rows[0]["batched_cell_updates"]

    def test_deterministic_and_ratio_grows(self):
        args = ("bench", "--sizes", "16,64", "--capacity", "120", "--seed", "5")
        a, b = run_cli(*args), run_cli(*args)
        assert a.stdout == b.stdout
        rows = json.loads(a.stdout)["rows"]
        assert rows[1]["ratio"] > rows[0]["ratio"]

    def test_malformed_sizes(self):
        proc = run_cli("bench", "--sizes", "16,x", "--capacity", "10", "--seed", "1")
        assert proc.returncode == 2


def test_solve_report_matches_published_schema(ex1_file):
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads(
        (Path(__file__).resolve().parents[1] / "docs" / "solve_report_schema.json")
        .read_text()
    )
    report = json.loads(run_cli("solve", ex1_file).stdout)
    jsonschema.validate(report, schema)
    report_c = json.loads(
        run_cli("solve", ex1_file, "--model", "constraint").stdout
    )
    jsonschema.validate(report_c, schema)
