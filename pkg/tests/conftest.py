# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Shared fixtures for MCN Traffgen tests."""

import io
from typing import Callable, Sequence

import pytest

from mcn_traffgen.model import ModelFitter, TrafficModel, save_model
from mcn_traffgen.trace import Trace, parse_trace

Row = tuple[int, str, str, str]

# Two phones within hour 0, exercising both machine levels
SAMPLE_ROWS: list[Row] = [
    (0, "u1", "PHONE", "SRV_REQ"),
    (5000, "u1", "PHONE", "HO"),
    (10000, "u1", "PHONE", "S1_CONN_REL"),
    (20000, "u1", "PHONE", "TAU"),
    (22000, "u1", "PHONE", "S1_CONN_REL"),
    (30000, "u1", "PHONE", "SRV_REQ"),
    (40000, "u1", "PHONE", "S1_CONN_REL"),
    (1000, "u2", "PHONE", "SRV_REQ"),
    (4000, "u2", "PHONE", "HO"),
    (7000, "u2", "PHONE", "HO"),
    (9000, "u2", "PHONE", "S1_CONN_REL"),
    (50000, "u2", "PHONE", "SRV_REQ"),
    (52000, "u2", "PHONE", "S1_CONN_REL"),
]


def rows_to_csv(rows: Sequence[Row]) -> str:
    """Render (timestamp_ms, ue_id, device_type, event_type) rows as CSV."""
    lines = ["timestamp_ms,ue_id,device_type,event_type"]
    lines.extend(f"{ts},{ue},{dev},{ev}" for ts, ue, dev, ev in rows)
    return "\n".join(lines) + "\n"


@pytest.fixture
def make_trace() -> Callable[[Sequence[Row]], Trace]:
    """Build a trace from device-column rows."""

    def _make(rows: Sequence[Row]) -> Trace:
        return parse_trace(io.StringIO(rows_to_csv(rows)), device_column=True)

    return _make


@pytest.fixture
def write_trace_csv(tmp_path) -> Callable[..., str]:
    """Write device-column rows to a CSV file and return its path."""

    def _write(rows: Sequence[Row], name: str = "trace.csv") -> str:
        path = tmp_path / name
        path.write_text(rows_to_csv(rows))
        return str(path)

    return _write


@pytest.fixture
def sample_trace(make_trace) -> Trace:
    """The two-phone sample trace."""
    return make_trace(SAMPLE_ROWS)


@pytest.fixture
def fitted_model(sample_trace) -> TrafficModel:
    """An LTE model with baseline fitted on the sample trace."""
    return ModelFitter().fit(sample_trace)


@pytest.fixture
def model_file(fitted_model, tmp_path) -> str:
    """The fitted sample model written to a file."""
    path = tmp_path / "model.yaml"
    with open(path, "w") as f:
        save_model(fitted_model, f)
    return str(path)


@pytest.fixture
def sample_trace_csv(write_trace_csv) -> str:
    """The two-phone sample trace written to a file."""
    return write_trace_csv(SAMPLE_ROWS, "sample.csv")
