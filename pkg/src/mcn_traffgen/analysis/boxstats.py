# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Hourly box statistics of per-UE metrics."""

import csv
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import IO, Sequence

import numpy as np

from mcn_traffgen.analysis.breakdown import event_states
from mcn_traffgen.machine.replay import BootstrapPolicy, replay
from mcn_traffgen.machine.states import TopState
from mcn_traffgen.trace.hours import covered_positions, hour_index, is_weekend
from mcn_traffgen.trace.models import DeviceType, EventType, Generation, Trace

BOX_STATS_COLUMNS = ("hour", "min", "q1", "median", "mean", "q3", "max")


class BoxMetric(str, Enum):
    """Per-UE metric summarized by box statistics."""

    COUNT = "count"
    SOJOURN = "sojourn"
    TAU_CONN_SHARE = "tau-conn-share"


class DayFilter(str, Enum):
    """Days pooled into the statistics."""

    ALL = "all"
    WEEKDAY = "weekday"
    WEEKEND = "weekend"

    def accepts(self, position: int) -> bool:
        """Check whether an absolute hour index falls on an accepted day."""
        if self is DayFilter.ALL:
            return True
        return is_weekend(position // 24) == (self is DayFilter.WEEKEND)


@dataclass(frozen=True)
class BoxStats:
    """Five-number summary plus mean of one hour-of-day."""

    hour: int
    minimum: float
    q1: float
    median: float
    mean: float
    q3: float
    maximum: float
    count: int

    @classmethod
    def of(cls, hour: int, values: Sequence[float]) -> "BoxStats":
        """Summarize values with linearly interpolated quartiles."""
        data = np.asarray(values, dtype=float)
        q1, median, q3 = np.quantile(data, [0.25, 0.5, 0.75])
        return cls(
            hour=hour,
            minimum=float(data.min()),
            q1=float(q1),
            median=float(median),
            mean=float(data.mean()),
            q3=float(q3),
            maximum=float(data.max()),
            count=int(data.size),
        )


def _ue_hour_values(
    trace: Trace,
    ue_id: str,
    metric: BoxMetric,
    event_type: EventType | None,
    state: str | None,
    utc_offset_minutes: int,
    bootstrap: BootstrapPolicy,
    generation: Generation,
) -> dict[int, float]:
    """Get a UE's metric per absolute hour index where it is defined."""
    off = utc_offset_minutes
    if metric is BoxMetric.COUNT:
        counts: dict[int, float] = defaultdict(float)
        for ev in trace.events[ue_id]:
            if ev.event_type is event_type:
                counts[hour_index(ev.timestamp_ms, off)] += 1
        return counts

    if metric is BoxMetric.SOJOURN:
        sojourns: dict[int, list[float]] = defaultdict(list)
        for sample in replay(trace.events[ue_id], bootstrap, generation).samples:
            if sample.source == state and not sample.censored:
                sojourns[hour_index(sample.start_ms, off)].append(sample.duration_s)
        return {pos: float(np.mean(values)) for pos, values in sojourns.items()}

    taus: dict[int, list[bool]] = defaultdict(list)
    for ev, top in event_states(trace, ue_id, bootstrap, generation):
        if ev.event_type is EventType.TAU:
            taus[hour_index(ev.timestamp_ms, off)].append(top is TopState.CONNECTED)
    return {pos: 100.0 * sum(flags) / len(flags) for pos, flags in taus.items()}


def hourly_box_stats(
    trace: Trace,
    metric: BoxMetric = BoxMetric.COUNT,
    event_type: EventType | None = None,
    state: str | None = None,
    days: DayFilter = DayFilter.ALL,
    device: DeviceType | None = None,
    utc_offset_minutes: int = 0,
    bootstrap: BootstrapPolicy = BootstrapPolicy.INFER_FROM_FIRST_EVENT,
    generation: Generation = Generation.LTE,
) -> list[BoxStats]:
    """Compute per-hour box statistics of a per-UE metric.

    Values of every matching day are pooled per hour-of-day. Event counts
    include the hours in which a UE was silent; sojourn means and TAU
    shares only the hours where they are defined.
    """
    if metric is BoxMetric.COUNT and event_type is None:
        raise ValueError("The count metric needs an event type")
    if metric is BoxMetric.SOJOURN and state is None:
        raise ValueError("The sojourn metric needs a state")

    covered = covered_positions(trace, utc_offset_minutes)
    positions = [p for p in covered if days.accepts(p)]
    ues = trace.ues_of(device) if device is not None else sorted(trace.events)

    per_hour: dict[int, list[float]] = defaultdict(list)
    for ue_id in ues:
        values = _ue_hour_values(
            trace,
            ue_id,
            metric,
            event_type,
            state,
            utc_offset_minutes,
            bootstrap,
            generation,
        )
        for position in positions:
            if metric is BoxMetric.COUNT:
                per_hour[position % 24].append(values.get(position, 0.0))
            elif position in values:
                per_hour[position % 24].append(values[position])

    return [BoxStats.of(hour, pooled) for hour, pooled in sorted(per_hour.items())]


def write_box_stats(stats: Sequence[BoxStats], stream: IO[str]) -> None:
    """Write box statistics as CSV."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(BOX_STATS_COLUMNS)
    for box in stats:
        writer.writerow(
            (
                box.hour,
                repr(box.minimum),
                repr(box.q1),
                repr(box.median),
                repr(box.mean),
                repr(box.q3),
                repr(box.maximum),
            )
        )
