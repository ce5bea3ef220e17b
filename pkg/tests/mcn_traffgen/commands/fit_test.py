# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Tests for the fit command."""

from click.testing import CliRunner

from mcn_traffgen.cli import main
from mcn_traffgen.commands.common import read_model


class TestFitCommand:
    """Tests for fit."""

    def test_fit(self, sample_trace_csv, tmp_path):
        """Test fitting the sample trace."""
        output = tmp_path / "model.yaml"
        runner = CliRunner()
        result = runner.invoke(
            main, ["fit", sample_trace_csv, "-o", str(output), "--device-column"]
        )
        assert result.exit_code == 0, result.output
        assert "✓ Fitted LTE model" in result.output
        assert "Trace: 2 UEs, 13 events" in result.output
        assert "Keys: 1" in result.output
        assert "Baseline: yes" in result.output
        assert "PHONE: 00h=1" in result.output

        model = read_model(output)
        assert len(model.entries) == 1
        assert model.baseline is not None

    def test_no_baseline(self, sample_trace_csv, tmp_path):
        """Test skipping the Poisson baseline."""
        output = tmp_path / "model.yaml"
        runner = CliRunner()
        result = runner.invoke(
            main,
            [
                "fit",
                sample_trace_csv,
                "-o",
                str(output),
                "--device-column",
                "--no-baseline",
            ],
        )
        assert result.exit_code == 0, result.output
        assert "Baseline: no" in result.output
        assert read_model(output).baseline is None

    def test_cluster_report(self, sample_trace_csv, tmp_path):
        """Test writing the cluster report."""
        report = tmp_path / "clusters.csv"
        runner = CliRunner()
        result = runner.invoke(
            main,
            [
                "fit",
                sample_trace_csv,
                "-o",
                str(tmp_path / "model.yaml"),
                "--device-column",
                "--cluster-report",
                str(report),
            ],
        )
        assert result.exit_code == 0, result.output
        lines = report.read_text().splitlines()
        assert lines[0].startswith("device_type,hour,cluster_id")
        assert lines[1].startswith("PHONE,0,0,2,1.0,")

    def test_settings_file(self, sample_trace_csv, tmp_path):
        """Test reading the device column setting from a settings file."""
        settings = tmp_path / "mcn-traffgen.yaml"
        settings.write_text("DeviceColumn: true\n")
        runner = CliRunner()
        result = runner.invoke(
            main,
            [
                "fit",
                sample_trace_csv,
                "-o",
                str(tmp_path / "model.yaml"),
                "-c",
                str(settings),
            ],
        )
        assert result.exit_code == 0, result.output

    def test_empty_trace(self, write_trace_csv, tmp_path):
        """Test that an empty trace exits with insufficient data."""
        trace = write_trace_csv([])
        runner = CliRunner()
        result = runner.invoke(
            main,
            ["fit", trace, "-o", str(tmp_path / "model.yaml"), "--device-column"],
        )
        assert result.exit_code == 3
        assert "✗" in result.output

    def test_wrong_header(self, sample_trace_csv, tmp_path):
        """Test that a device-column trace read as raw is a format error."""
        runner = CliRunner()
        result = runner.invoke(
            main, ["fit", sample_trace_csv, "-o", str(tmp_path / "model.yaml")]
        )
        assert result.exit_code == 2
        assert "expected header" in result.output

    def test_output_required(self, sample_trace_csv):
        """Test that the output path is required."""
        runner = CliRunner()
        result = runner.invoke(main, ["fit", sample_trace_csv])
        assert result.exit_code == 2
        assert "--output" in result.output
