# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Tests for the to5g command."""

from click.testing import CliRunner

from mcn_traffgen.cli import main
from mcn_traffgen.commands.common import read_model
from mcn_traffgen.trace import Generation


class TestTo5gCommand:
    """Tests for to5g."""

    def test_convert(self, model_file, tmp_path):
        """Test converting the fitted model."""
        output = tmp_path / "model-5g.yaml"
        runner = CliRunner()
        result = runner.invoke(main, ["to5g", model_file, "-o", str(output)])
        assert result.exit_code == 0, result.output
        assert "✓ Converted 1 keys to 5G" in result.output
        assert str(output) in result.output

        model = read_model(output)
        assert model.generation is Generation.FIVE_G
        assert "AN_REL" in output.read_text()

    def test_factors_file(self, model_file, tmp_path):
        """Test converting with a factors file."""
        factors = tmp_path / "factors.csv"
        factors.write_text("event,factor\nSRV_REQ,2\n")
        output = tmp_path / "model-5g.yaml"
        runner = CliRunner()
        result = runner.invoke(
            main,
            [
                "to5g",
                model_file,
                "-o",
                str(output),
                "--factors",
                str(factors),
                "--scale-sojourn",
            ],
        )
        assert result.exit_code == 0, result.output
        assert output.exists()

    def test_invalid_factors(self, model_file, tmp_path):
        """Test that a malformed factors file exits with 4."""
        factors = tmp_path / "factors.csv"
        factors.write_text("HO,-1\n")
        output = tmp_path / "model-5g.yaml"
        runner = CliRunner()
        result = runner.invoke(
            main,
            ["to5g", model_file, "-o", str(output), "--factors", str(factors)],
        )
        assert result.exit_code == 4
        assert not output.exists()

    def test_already_5g(self, model_file, tmp_path):
        """Test that converting twice exits with 4."""
        once = tmp_path / "once.yaml"
        runner = CliRunner()
        assert runner.invoke(main, ["to5g", model_file, "-o", str(once)]).exit_code == 0
        result = runner.invoke(
            main, ["to5g", str(once), "-o", str(tmp_path / "twice.yaml")]
        )
        assert result.exit_code == 4
        assert "✗" in result.output
