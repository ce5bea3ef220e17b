# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Trace package for MCN Traffgen."""

from mcn_traffgen.trace.models import (
    ControlEvent,
    DeviceType,
    EventType,
    Generation,
    HourSlice,
    TacCatalog,
    Trace,
)
from mcn_traffgen.trace.parser import (
    TraceParser,
    load_tac_catalog,
    map_tac,
    parse_trace,
    write_trace,
)
from mcn_traffgen.trace.hours import partition_hours

__all__ = [
    "ControlEvent",
    "DeviceType",
    "EventType",
    "Generation",
    "HourSlice",
    "TacCatalog",
    "Trace",
    "TraceParser",
    "load_tac_catalog",
    "map_tac",
    "parse_trace",
    "partition_hours",
    "write_trace",
]
