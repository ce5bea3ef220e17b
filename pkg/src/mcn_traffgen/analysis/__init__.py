# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Characterization and validation reports over traces."""

from mcn_traffgen.analysis.boxstats import (
    BoxMetric,
    BoxStats,
    DayFilter,
    hourly_box_stats,
)
from mcn_traffgen.analysis.breakdown import (
    BreakdownTable,
    event_breakdown,
    state_time_breakdown,
)
from mcn_traffgen.analysis.compare import CompareMetric, CompareResult, cdf_compare
from mcn_traffgen.analysis.variance_time import (
    VtPoint,
    VtSource,
    variance_time,
    variance_time_report,
)

__all__ = [
    "BoxMetric",
    "BoxStats",
    "BreakdownTable",
    "CompareMetric",
    "CompareResult",
    "DayFilter",
    "VtPoint",
    "VtSource",
    "cdf_compare",
    "event_breakdown",
    "hourly_box_stats",
    "state_time_breakdown",
    "variance_time",
    "variance_time_report",
]
