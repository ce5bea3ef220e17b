# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Tests for common command utilities."""

import logging

import pytest

from mcn_traffgen.commands.common import (
    configure_logging,
    handle_errors,
    read_model,
    read_trace,
)
from mcn_traffgen.config import Settings
from mcn_traffgen.errors import InsufficientData, UnknownTac
from mcn_traffgen.trace import DeviceType

RAW_TRACE = (
    "timestamp_ms,ue_id,tac,event_type\n"
    "0,u1,35000001,ATCH\n"
    "10,u2,35000002,ATCH\n"
)


class TestConfigureLogging:
    """Tests for configure_logging."""

    def test_debug(self):
        """Test that debug forces the debug level."""
        logger = configure_logging(debug=True)
        assert logger.name == "mcn_traffgen"
        assert logger.level == logging.DEBUG

    def test_level_name(self):
        """Test that the level name is honored without debug."""
        configure_logging()
        logger = configure_logging(level="WARNING")
        assert logger.level == logging.WARNING
        assert len(logger.handlers) == 1
        assert not logger.propagate

    def test_module_records_use_package_handler(self):
        """Test that module loggers reach the package handler with their name."""
        logger = configure_logging()
        record = logging.getLogger("mcn_traffgen.model.fit").makeRecord(
            "mcn_traffgen.model.fit", logging.INFO, __file__, 1, "Fitting", (), None
        )
        line = logger.handlers[0].format(record)
        assert line.endswith(" INFO mcn_traffgen.model.fit: Fitting")
        assert line[:20].endswith("Z")


class TestHandleErrors:
    """Tests for handle_errors."""

    def test_exit_code(self):
        """Test that library errors exit with their code."""
        with pytest.raises(SystemExit) as exc:
            with handle_errors():
                raise InsufficientData("no events")
        assert exc.value.code == 3

    def test_other_errors_pass(self):
        """Test that other exceptions are not swallowed."""
        with pytest.raises(KeyError):
            with handle_errors():
                raise KeyError("x")

    def test_message(self, capsys):
        """Test that the error is reported on stderr."""
        with pytest.raises(SystemExit):
            with handle_errors():
                raise InsufficientData("no events")
        assert "✗ no events" in capsys.readouterr().err


class TestReadTrace:
    """Tests for read_trace."""

    def test_tac_catalog(self, tmp_path):
        """Test that a catalog resolves raw TACs."""
        trace_path = tmp_path / "raw.csv"
        trace_path.write_text(RAW_TRACE)
        catalog = tmp_path / "catalog.csv"
        catalog.write_text("tac,device_type\n35000001,PHONE\n35000002,TABLET\n")
        trace = read_trace(trace_path, Settings(), tac_catalog=catalog)
        assert trace.ues_of(DeviceType.TABLET) == ["u2"]

    def test_unknown_tac_override(self, tmp_path):
        """Test that an explicit policy overrides the settings."""
        trace_path = tmp_path / "raw.csv"
        trace_path.write_text(RAW_TRACE)
        with pytest.raises(UnknownTac):
            read_trace(trace_path, Settings())
        trace = read_trace(trace_path, Settings(), unknown_tac="PHONE")
        assert trace.ue_count == 2

    def test_device_column_setting(self, write_trace_csv):
        """Test that the settings select the device column."""
        path = write_trace_csv([(0, "u1", "TABLET", "ATCH")])
        trace = read_trace(path, Settings(DeviceColumn=True))
        assert trace.ues_of(DeviceType.TABLET) == ["u1"]


def test_read_model(model_file, fitted_model):
    """Test reading a model file."""
    assert read_model(model_file) == fitted_model

