# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Tests for the validation commands."""

import yaml
from click.testing import CliRunner

from mcn_traffgen.cli import main
from mcn_traffgen.fiveg import convert_model_to_5g
from mcn_traffgen.model import save_model
from mcn_traffgen.model.io import model_to_data

ILLEGAL_ROWS = [
    (0, "u1", "PHONE", "ATCH"),
    (1000, "u1", "PHONE", "ATCH"),
    (2000, "u1", "PHONE", "HO"),
]


class TestValidateCommand:
    """Tests for validate."""

    def test_accepted(self, sample_trace_csv):
        """Test that the sample trace is accepted."""
        runner = CliRunner()
        result = runner.invoke(main, ["validate", sample_trace_csv, "--device-column"])
        assert result.exit_code == 0, result.output
        assert "✓ 2 UEs, 13 events accepted by the LTE machine" in result.output

    def test_violation(self, write_trace_csv):
        """Test that an illegal event exits with 5."""
        trace = write_trace_csv(ILLEGAL_ROWS)
        runner = CliRunner()
        result = runner.invoke(main, ["validate", trace, "--device-column"])
        assert result.exit_code == 5
        assert "✗ 1 violations" in result.output
        assert "u1[1]: ATCH is not allowed from" in result.output

    def test_deregistered_bootstrap(self, sample_trace_csv):
        """Test that a leading SRV_REQ is illegal from DEREGISTERED."""
        runner = CliRunner()
        result = runner.invoke(
            main,
            [
                "validate",
                sample_trace_csv,
                "--device-column",
                "--bootstrap",
                "deregistered",
            ],
        )
        assert result.exit_code == 5
        assert "u1[0]: SRV_REQ is not allowed from" in result.output

    def test_annotated(self, sample_trace_csv, tmp_path):
        """Test writing the annotated replay."""
        annotated = tmp_path / "annotated.csv"
        runner = CliRunner()
        result = runner.invoke(
            main,
            [
                "validate",
                sample_trace_csv,
                "--device-column",
                "--annotated",
                str(annotated),
            ],
        )
        assert result.exit_code == 0, result.output
        lines = annotated.read_text().splitlines()
        assert lines[0] == "timestamp_ms,ue_id,event_type,top_state,sub_state"
        assert len(lines) == 14

    def test_malformed_trace(self, tmp_path):
        """Test that a malformed trace exits with 2."""
        trace = tmp_path / "bad.csv"
        trace.write_text("timestamp_ms,ue_id,device_type,event_type\nx,u1,PHONE,HO\n")
        runner = CliRunner()
        result = runner.invoke(main, ["validate", str(trace), "--device-column"])
        assert result.exit_code == 2
        assert "Malformed line 2" in result.output


class TestValidateModelCommand:
    """Tests for validate-model."""

    def test_valid(self, model_file):
        """Test that a fitted model is valid."""
        runner = CliRunner()
        result = runner.invoke(main, ["validate-model", model_file])
        assert result.exit_code == 0, result.output
        assert "✓ LTE model with 1 keys is valid" in result.output

    def test_5g_model(self, fitted_model, tmp_path):
        """Test that a converted model is valid."""
        path = tmp_path / "model-5g.yaml"
        with open(path, "w") as f:
            save_model(convert_model_to_5g(fitted_model), f)
        runner = CliRunner()
        result = runner.invoke(main, ["validate-model", str(path)])
        assert result.exit_code == 0, result.output
        assert "FIVE_G model" in result.output

    def test_inconsistent(self, fitted_model, tmp_path):
        """Test that broken cluster weights exit with 5."""
        data = model_to_data(fitted_model)
        data["weights"][0]["clusters"] = {0: 0.5}
        path = tmp_path / "broken.yaml"
        path.write_text(yaml.safe_dump(data))
        runner = CliRunner()
        result = runner.invoke(main, ["validate-model", str(path)])
        assert result.exit_code == 5
        assert "violations" in result.output

    def test_unreadable(self, tmp_path):
        """Test that an unreadable model exits with 4."""
        path = tmp_path / "broken.yaml"
        path.write_text("keys: [unclosed")
        runner = CliRunner()
        result = runner.invoke(main, ["validate-model", str(path)])
        assert result.exit_code == 4
