"""Tests for the command line interface."""

from pathlib import Path

import pytest
from click.testing import CliRunner

from secrecy_toolkit.cli.app import cli, exit_code_for
from secrecy_toolkit.io.exports import read_region_csv
from secrecy_toolkit.utils.exceptions import ChannelPreconditionError, InequalityParseError, SpecFieldError

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def sample(name: str) -> str:
    return str(SAMPLES / name)


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


class TestExitCodes:
    def test_mapping(self):
        assert exit_code_for(SpecFieldError("f.toml", "x", "bad")) == 2
        assert exit_code_for(InequalityParseError(1, "x <=", "missing right-hand side")) == 2
        assert exit_code_for(ChannelPreconditionError("thm2", "not degraded")) == 1

    def test_malformed_spec(self, runner, tmp_path):
        spec = tmp_path / "broken.toml"
        spec.write_text("[alphabets\nx = 2\n")
        result = runner.invoke(cli, ["channel-check", str(spec)])
        assert result.exit_code == 2

    def test_missing_cascade_is_usage_error(self, runner, tmp_path):
        result = runner.invoke(
            cli, ["region", sample("noiseless_channel.toml"), "--mode", "thm1-single-cascade", "--out", str(tmp_path)]
        )
        assert result.exit_code == 2

    def test_bad_sizes(self, runner, tmp_path):
        result = runner.invoke(
            cli, ["region", sample("bsc_channel.toml"), "--mode", "thm1-search", "--sizes", "2,2", "--out", str(tmp_path)]
        )
        assert result.exit_code == 2


class TestChannelCheck:
    def test_reports_family(self, runner):
        result = runner.invoke(cli, ["channel-check", sample("thm2_channel.toml")])
        assert result.exit_code == 0, result.output
        assert "Capacity family" in result.output
        assert "thm2 (Y2 ahead of Y1)" in result.output


class TestRegion:
    def test_capacity_csv(self, runner, tmp_path):
        result = runner.invoke(
            cli, ["region", sample("thm2_channel.toml"), "--mode", "thm2", "--grid", "20", "--out", str(tmp_path)]
        )
        assert result.exit_code == 0, result.output
        csv_path = tmp_path / "thm2_capacity.csv"
        assert csv_path.read_text().startswith("R1,R2\n")
        assert (tmp_path / "thm2_capacity.halfplanes.txt").exists()
        rings = read_region_csv(csv_path)
        assert len(rings) == 1
        assert max(x for x, _ in rings[0]) == pytest.approx(1.0)
        assert max(y for _, y in rings[0]) == pytest.approx(2.0)

    def test_capacity_needs_degraded_channel(self, runner, tmp_path):
        result = runner.invoke(cli, ["region", sample("bsc_channel.toml"), "--mode", "thm2", "--out", str(tmp_path)])
        assert result.exit_code == 1

    def test_degenerate_cascade_gives_origin(self, runner, tmp_path):
        result = runner.invoke(
            cli,
            [
                "region",
                sample("noiseless_channel.toml"),
                "--mode",
                "thm1-single-cascade",
                "--cascade",
                sample("degenerate_cascade.toml"),
                "--out",
                str(tmp_path),
            ],
        )
        assert result.exit_code == 0, result.output
        assert (tmp_path / "thm1_single.csv").read_text() == "R1,R2\n0,0\n"

    def test_cascade_alphabet_mismatch(self, runner, tmp_path):
        result = runner.invoke(
            cli,
            [
                "region",
                sample("noiseless_channel.toml"),
                "--mode",
                "thm1-single-cascade",
                "--cascade",
                sample("binary_cascade.toml"),
                "--out",
                str(tmp_path),
            ],
        )
        assert result.exit_code == 2

    def test_subregions(self, runner, tmp_path):
        result = runner.invoke(
            cli, ["region", sample("thm3_channel.toml"), "--mode", "subregions", "--grid", "15", "--out", str(tmp_path)]
        )
        assert result.exit_code == 0, result.output
        assert (tmp_path / "subregions_union.csv").exists()
        assert (tmp_path / "thm3_capacity.csv").exists()
        assert len(list(tmp_path.glob("subregion_R2*.csv"))) >= 1


class TestFmDerive:
    def test_writes_derivation(self, runner, tmp_path):
        result = runner.invoke(
            cli,
            [
                "fm-derive",
                sample("binary_noiseless_channel.toml"),
                sample("binary_cascade.toml"),
                "--include-redundant",
                "--out",
                str(tmp_path),
            ],
        )
        assert result.exit_code == 0, result.output
        for name in ("fm_system.txt", "fm_reduced.txt", "fm_trace.txt", "fm_region.csv"):
            assert (tmp_path / name).exists()
        assert "Region unchanged" in result.output
        assert "true" in result.output
        rings = read_region_csv(tmp_path / "fm_region.csv")
        assert sorted(rings[0]) == [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0)]


class TestSimulate:
    def _run(self, runner, out: Path, *extra: str):
        return runner.invoke(
            cli,
            [
                "simulate",
                sample("noiseless_channel.toml"),
                sample("bits_cascade.toml"),
                "--config",
                sample("sim_noiseless.toml"),
                "--trials",
                "50",
                "--out",
                str(out),
                *extra,
            ],
        )

    def test_same_seed_same_report(self, runner, tmp_path):
        first = self._run(runner, tmp_path / "a")
        second = self._run(runner, tmp_path / "b", "--workers", "3")
        assert first.exit_code == 0, first.output
        assert second.exit_code == 0, second.output
        report = (tmp_path / "a" / "report.txt").read_text()
        assert report == (tmp_path / "b" / "report.txt").read_text()
        assert "trials = 50" in report
        assert (tmp_path / "a" / "events.csv").read_text().startswith("event,count\n")

    def test_leakage_histogram_too_large(self, runner, tmp_path):
        result = runner.invoke(
            cli,
            ["simulate", sample("bsc_channel.toml"), sample("binary_cascade.toml"), "--n", "20", "--out", str(tmp_path)],
        )
        assert result.exit_code == 1

    def test_bad_slack_order(self, runner, tmp_path):
        result = self._run(runner, tmp_path, "--eps", "1.0")
        assert result.exit_code == 1


def test_check_config(runner):
    result = runner.invoke(cli, ["check-config"])
    assert result.exit_code == 0, result.output
    assert "Configuration Check" in result.output
