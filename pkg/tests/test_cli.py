"""
Command-line integration tests

Runs manage.py in a subprocess to check the exit-code contract:
0 success, 1 domain or data failure, 2 usage error.
"""

import os
import subprocess
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent


def manage(*args, env=None):
    environment = {**os.environ, "DJANGO_SETTINGS_MODULE": "pythagwl.settings", **(env or {})}
    return subprocess.run(
        [sys.executable, "manage.py", *args],
        cwd=ROOT,
        env=environment,
        capture_output=True,
        text=True,
        timeout=120,
    )


@pytest.mark.integration
class TestExitCodes:

    def test_predict_succeeds(self):
        result = manage("predict", "--rs", "800", "--ra", "600", "--gamma", "2", "--unit", "total")
        assert result.returncode == 0, result.stderr
        assert "0.640" in result.stdout

    def test_missing_flag_is_usage_error(self):
        result = manage("predict", "--rs", "800")
        assert result.returncode == 2

    def test_conflicting_flags_are_usage_error(self):
        result = manage("predict", "--rs", "800", "--ra", "600", "--gamma", "2", "--beta", "0.0006")
        assert result.returncode == 2
        assert "exactly one" in result.stderr

    def test_unknown_unit_is_usage_error(self):
        result = manage("predict", "--rs", "8", "--ra", "6", "--gamma", "2", "--unit", "weekly")
        assert result.returncode == 2

    def test_domain_error_exits_one(self):
        result = manage("predict", "--rs", "-5", "--ra", "600", "--gamma", "2")
        assert result.returncode == 1
        assert "must be positive" in result.stderr

    def test_missing_season_exits_one(self):
        result = manage("fit", "--season", "1850")
        assert result.returncode == 1

    def test_invalid_simulation_config_is_usage_error(self):
        result = manage("simulate", "--spread", "-1")
        assert result.returncode == 2


@pytest.mark.integration
class TestOutputs:

    def test_table_is_byte_identical(self):
        first = manage("table", "--format", "csv")
        second = manage("table", "--format", "csv")
        assert first.returncode == 0, first.stderr
        assert first.stdout == second.stdout
        assert len(first.stdout.splitlines()) == 22

    def test_logs_stay_off_stdout(self):
        quiet = manage("table", "--format", "csv")
        verbose = manage("table", "--format", "csv", "--verbosity", "2")
        assert verbose.stdout == quiet.stdout
        assert "gamma_hat" in verbose.stderr

    def test_seed_from_environment(self):
        from_env = manage("simulate", "--format", "csv", env={"PYTHAG_SEED": "7"})
        from_flag = manage("simulate", "--format", "csv", "--seed", "7", env={"PYTHAG_SEED": "99"})
        assert from_env.returncode == 0, from_env.stderr
        assert from_env.stdout == from_flag.stdout

    def test_table_from_stdin(self):
        data = (ROOT / "data" / "mlb_1991_2011.csv").read_text(encoding="utf-8")
        result = subprocess.run(
            [sys.executable, "manage.py", "table", "--input", "-", "--format", "csv"],
            cwd=ROOT,
            input=data,
            capture_output=True,
            text=True,
            timeout=120,
        )
        assert result.returncode == 0, result.stderr
        assert result.stdout == manage("table", "--format", "csv").stdout
