"""Tests for environment-driven configuration."""

import os

import pytest

from secrecy_toolkit.utils.config import THREADS_ENV_VAR, init_output_dir, validate_config, worker_count


class TestWorkerCount:
    def test_cap_from_environment(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV_VAR, "3")
        assert worker_count() == 3
        assert worker_count(8) == 3
        assert worker_count(2) == 2
        assert worker_count(0) == 1

    def test_default_cap(self, monkeypatch):
        monkeypatch.delenv(THREADS_ENV_VAR, raising=False)
        assert worker_count() == min(8, os.cpu_count() or 1)

    @pytest.mark.parametrize("raw", ["0", "-4", "many", "2.5"])
    def test_unusable_values_mean_one_worker(self, monkeypatch, raw):
        monkeypatch.setenv(THREADS_ENV_VAR, raw)
        assert worker_count() == 1
        assert worker_count(6) == 1


class TestValidateConfig:
    def test_clean_environment(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV_VAR, "4")
        assert not any(THREADS_ENV_VAR in warning for warning in validate_config())

    def test_below_one(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV_VAR, "0")
        assert f"{THREADS_ENV_VAR}=0 is below 1; using 1 worker" in validate_config()

    def test_not_an_integer(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV_VAR, "many")
        assert f"{THREADS_ENV_VAR}='many' is not an integer; using 1 worker" in validate_config()


def test_init_output_dir(tmp_path):
    target = init_output_dir(tmp_path / "runs" / "first")
    assert target.is_dir()
