# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Tests for config commands."""

import json

from click.testing import CliRunner

from mcn_traffgen.cli import main
from mcn_traffgen.config import Settings, load_config


class TestConfigCommands:
    """Tests for config command group."""

    def test_config_group_exists(self):
        """Test config command group exists."""
        runner = CliRunner()
        result = runner.invoke(main, ["config", "--help"])
        assert result.exit_code == 0
        assert "Manage settings files" in result.output

    def test_config_init(self, tmp_path):
        """Test writing a default settings file."""
        path = tmp_path / "mcn-traffgen.yaml"
        runner = CliRunner()
        result = runner.invoke(main, ["config", "init", str(path)])
        assert result.exit_code == 0
        assert load_config(path) == Settings()

    def test_config_init_existing(self, tmp_path):
        """Test that init keeps an existing file unless forced."""
        path = tmp_path / "mcn-traffgen.yaml"
        path.write_text("ThetaN: 5\n")
        runner = CliRunner()
        result = runner.invoke(main, ["config", "init", str(path)])
        assert result.exit_code == 1
        assert load_config(path).ThetaN == 5

        result = runner.invoke(main, ["config", "init", str(path), "--force"])
        assert result.exit_code == 0
        assert load_config(path).ThetaN == 1000

    def test_config_show(self, tmp_path):
        """Test showing the effective settings."""
        path = tmp_path / "mcn-traffgen.yaml"
        path.write_text("Alpha: 0.01\n")
        runner = CliRunner()
        result = runner.invoke(main, ["config", "show", "-c", str(path)])
        assert result.exit_code == 0
        output = json.loads(result.stdout)
        assert output["Alpha"] == 0.01
        assert output["ThetaN"] == 1000

    def test_config_show_invalid(self, tmp_path):
        """Test that an invalid settings file exits with 4."""
        path = tmp_path / "mcn-traffgen.yaml"
        path.write_text("Alpha: 2\n")
        runner = CliRunner()
        result = runner.invoke(main, ["config", "show", "-c", str(path)])
        assert result.exit_code == 4
        assert "Alpha" in result.output

    def test_config_get(self):
        """Test config get command."""
        runner = CliRunner()
        result = runner.invoke(main, ["config", "get", "ThetaF"])
        assert result.exit_code == 0
        output = json.loads(result.stdout)
        assert output == {"key": "ThetaF", "value": 5.0}

    def test_config_get_unknown_key(self):
        """Test config get with unknown key."""
        runner = CliRunner()
        result = runner.invoke(main, ["config", "get", "unknown"])
        assert result.exit_code == 4
        assert "Unknown setting 'unknown'" in result.output

    def test_config_set(self, tmp_path):
        """Test config set command on a new file."""
        path = tmp_path / "mcn-traffgen.yaml"
        runner = CliRunner()
        result = runner.invoke(main, ["config", "set", "ThetaN", "50", "-c", str(path)])
        assert result.exit_code == 0
        output = json.loads(result.stdout)
        assert output == {"key": "ThetaN", "value": 50, "oldValue": 1000}
        assert load_config(path).ThetaN == 50

    def test_config_set_list(self, tmp_path):
        """Test that values are parsed as YAML."""
        path = tmp_path / "mcn-traffgen.yaml"
        runner = CliRunner()
        result = runner.invoke(
            main, ["config", "set", "VtScales", "[10, 1]", "-c", str(path)]
        )
        assert result.exit_code == 0
        assert load_config(path).VtScales == [1.0, 10.0]

    def test_config_set_invalid(self, tmp_path):
        """Test that an invalid value is refused."""
        path = tmp_path / "mcn-traffgen.yaml"
        runner = CliRunner()
        result = runner.invoke(main, ["config", "set", "Alpha", "2", "-c", str(path)])
        assert result.exit_code == 4
        assert "Invalid setting" in result.output
        assert not path.exists()

    def test_config_set_unknown_key(self, tmp_path):
        """Test that unknown keys are refused."""
        path = tmp_path / "mcn-traffgen.yaml"
        runner = CliRunner()
        result = runner.invoke(main, ["config", "set", "Color", "red", "-c", str(path)])
        assert result.exit_code == 4
