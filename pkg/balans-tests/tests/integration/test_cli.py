"""
Integration tests for the balans command line (cli.py run in a subprocess).

Exit codes: 0 success, 1 mismatch, 2 usage, 3 undecidable at the budget.
"""

import json

import pytest


def _roundtrips(stdout: str) -> bool:
    return json.dumps(json.loads(stdout), sort_keys=True, indent=2) + "\n" == stdout


@pytest.mark.integration
def test_find_one_one_balancing(cli_runner):
    """find --a 1 --b 1 --variant balancing --nmax 1500 lists 6, 35, 204, 1189."""
    result = cli_runner.run("find", "--a", 1, "--b", 1, "--variant", "balancing", "--nmax", 1500)
    assert result.code == 0
    data = result.json()
    assert data["n"] == ["6", "35", "204", "1189"]
    assert data["r"] == ["2", "14", "84", "492"]
    assert _roundtrips(result.stdout)


@pytest.mark.integration
def test_find_csv_and_detect(cli_runner):
    result = cli_runner.run("--format", "csv", "find", "--a", 1, "--b", 1,
                            "--variant", "cobalancing", "--nmax", 1000)
    assert result.code == 0
    assert result.stdout.splitlines() == ["n,r", "2,1", "14,6", "84,35", "492,204"]

    result = cli_runner.run("find", "--a", 1, "--b", 1, "--nmax", 300000, "--detect")
    assert result.json()["recurrence"] == {"n": "(6, -1)", "r": "(6, -1, _2)"}


@pytest.mark.integration
def test_find_single_n(cli_runner):
    result = cli_runner.run("find", "--a", 9, "--b", 1, "--square", "--n", 2)
    assert result.code == 0
    assert result.json()["r"] == ["1"]


@pytest.mark.integration
def test_detect_cobalancing_tuple(cli_runner):
    result = cli_runner.run("detect", "--terms", "2,14,84,492,2870,16730", "--depth", 2, "--constant")
    assert result.code == 0
    assert result.json()["tuple"] == "(6, -1, _2)"

    text = cli_runner.run("--format", "text", "detect", "--terms", "6,35,204,1189,6930,40391,235416",
                          "--table-form")
    assert text.stdout == "(1, 34, -34, -1, 1)\n"


@pytest.mark.integration
def test_detect_nothing_found(cli_runner):
    result = cli_runner.run("detect", "--terms", "2,3,5,7,11,13,17,19,23,29", "--max-depth", 2)
    assert result.code == 0
    assert result.json() == {"found": False, "tuple": None}


@pytest.mark.integration
def test_seq_backward_text(cli_runner):
    result = cli_runner.run("--format", "text", "seq", "--family", "tribonacci", "--start", -4, "--count", 6)
    assert result.code == 0
    assert result.stdout == "0 -1 1 0 0 1\n"


@pytest.mark.integration
def test_seq_custom_recurrence_json(cli_runner):
    result = cli_runner.run("seq", "--family", "recurrence", "--coeffs", "6,-1", "--constant", 2,
                            "--init", "0,2", "--count", 5)
    assert result.json()["terms"] == ["0", "2", "14", "84", "492"]


@pytest.mark.integration
def test_recip_pell_floor(cli_runner):
    result = cli_runner.run("recip", "--family", "pell", "--start", 3, "--mode", "floor")
    assert result.code == 0
    data = result.json()
    assert data["answer"] == "2"
    assert data["tail"]["kind"] in ("geometric", "linear")
    assert _roundtrips(result.stdout)


@pytest.mark.integration
def test_recip_partial_sum_nearest(cli_runner):
    result = cli_runner.run("--format", "text", "recip", "--family", "tribonacci", "--start", 4,
                            "--partial-sum-denoms", "--mode", "nearest")
    assert result.stdout == "4\n"


@pytest.mark.integration
def test_recip_tie_is_undecidable(cli_runner):
    """1 + 1/2 + 1/4 + ... = 2, so the inverse sits exactly on the tie 1/2."""
    result = cli_runner.run("recip", "--family", "recurrence", "--coeffs", 2, "--init", 1,
                            "--start", 0, "--mode", "nearest", "--budget", 64)
    assert result.code == 3
    assert "❌" in result.stderr


@pytest.mark.integration
def test_verify_thma1(cli_runner):
    result = cli_runner.run("verify", "--theorem", "thmA.1")
    assert result.code == 0
    data = result.json()
    assert data["status"] == "pass"
    assert data["rows"][0]["found"] == []


@pytest.mark.integration
def test_verify_mismatch_exit_code(cli_runner):
    result = cli_runner.run("--format", "text", "verify", "--theorem", "conj4.1", "--ymax", 8, "--nmax", 10)
    assert result.code == 1
    assert result.stdout.startswith("conj4.1: fail")


@pytest.mark.integration
def test_verify_range_override(cli_runner):
    result = cli_runner.run("verify", "--theorem", "eq1.1", "--range", "2:8")
    assert result.code == 0
    assert len(result.json()["rows"]) == 7


@pytest.mark.integration
@pytest.mark.parametrize("args", [
    ("frobnicate",),
    ("find", "--a", "1"),
    ("find", "--a", "1", "--b", "1", "--bogus"),
    ("verify", "--theorem", "thm9.9"),
    ("verify", "--theorem", "eq1.1", "--range", "9:2"),
    ("grid", "--amax", "0"),
    ("grid", "--bmax", "-3"),
    ("grid", "--nmax", "0"),
    ("detect", "--terms", "1,2,3,4,5,6", "--max-depth", "0"),
])
def test_usage_errors_exit_2(cli_runner, args):
    result = cli_runner.run(*args)
    assert result.code == 2
    assert "usage" in result.stderr.lower()
    assert result.stdout == ""


@pytest.mark.integration
@pytest.mark.parametrize("args", [
    ("seq", "--family", "cobalancing", "--a", "3", "--b", "1"),
    ("find", "--a", "2", "--b", "4"),
    ("--jobs", "0", "find", "--a", "1", "--b", "1"),
    ("detect", "--terms", "1,2,3,4,5,6", "--depth", "0"),
    ("detect", "--terms", "1,2,3", "--depth", "2", "--constant"),
    ("seq", "--family", "pell", "--count", "-1"),
])
def test_domain_errors_exit_2(cli_runner, args):
    result = cli_runner.run(*args)
    assert result.code == 2
    assert "❌" in result.stderr
    assert result.stdout == ""


@pytest.mark.integration
def test_missing_config_falls_back_to_defaults(cli_runner, tmp_path):
    result = cli_runner.run("--config", tmp_path / "absent.json", "verify", "--theorem", "thmA.1",
                            "--nmax", 1000)
    assert result.code == 0
    assert "not found" in result.stderr


@pytest.mark.integration
def test_malformed_config_is_usage_error(cli_runner, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    result = cli_runner.run("--config", bad, "seq", "--family", "pell")
    assert result.code == 2


@pytest.mark.integration
def test_grid_outputs_deterministic_across_jobs(cli_runner, tmp_path, ppm_helper):
    outputs = []
    for jobs in (1, 3):
        csv_path, ppm_path = tmp_path / f"grid{jobs}.csv", tmp_path / f"grid{jobs}.ppm"
        result = cli_runner.run("--jobs", jobs, "grid", "--variant", "balancing", "--amax", 8, "--bmax", 8,
                                "--nmax", 200, "--out-csv", csv_path, "--out-ppm", ppm_path)
        assert result.code == 0
        outputs.append((csv_path.read_bytes(), ppm_path.read_bytes(), result.stdout))
    assert outputs[0] == outputs[1]
    assert ppm_helper.header(outputs[0][1]) == ("P3", 8, 8, 255)

    env_run = cli_runner.run("--format", "csv", "grid", "--amax", 8, "--bmax", 8, "--nmax", 200, jobs_env=2)
    assert env_run.stdout.encode("ascii") == outputs[0][0]


@pytest.mark.integration
def test_grid_pattern_report(cli_runner):
    result = cli_runner.run("grid", "--variant", "cobalancing", "--amax", 6, "--bmax", 6, "--nmax", 100,
                            "--pattern-report")
    assert result.code == 0
    data = result.json()
    assert data["variant"] == "cobalancing"
    assert "conforming_fraction" in data["pattern"]


@pytest.mark.integration
def test_grid_explicit_bounds_win_over_config(cli_runner):
    result = cli_runner.run("grid", "--amax", 1, "--bmax", 2, "--nmax", 50)
    assert result.code == 0
    data = result.json()
    assert (data["a_max"], data["b_max"], data["n_max"]) == ("1", "2", "50")
    assert data["cells"] == "2"
