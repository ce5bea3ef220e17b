# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Wall-clock hour partitioning of traces."""

from mcn_traffgen.constants import EPOCH_WEEKDAY, HOURS_PER_DAY, MS_PER_HOUR
from mcn_traffgen.trace.models import ControlEvent, HourSlice, Trace

MS_PER_MINUTE = 60_000


def hour_index(timestamp_ms: int, utc_offset_minutes: int = 0) -> int:
    """Get the absolute wall-clock hour index of a timestamp."""
    return (timestamp_ms + utc_offset_minutes * MS_PER_MINUTE) // MS_PER_HOUR


def hour_position(timestamp_ms: int, utc_offset_minutes: int = 0) -> tuple[int, int]:
    """Get the (day, hour-of-day) of a timestamp."""
    return divmod(hour_index(timestamp_ms, utc_offset_minutes), HOURS_PER_DAY)


def hour_start_ms(index: int, utc_offset_minutes: int = 0) -> int:
    """Get the epoch timestamp at which an absolute hour index starts."""
    return index * MS_PER_HOUR - utc_offset_minutes * MS_PER_MINUTE


def is_weekend(day: int) -> bool:
    """Check whether a day index (days since the epoch) is a Saturday or Sunday."""
    return (day + EPOCH_WEEKDAY) % 7 >= 5


def partition_hours(trace: Trace, utc_offset_minutes: int = 0) -> list[HourSlice]:
    """Split a trace into non-overlapping wall-clock hour slices.

    One slice per (day, hour-of-day, device type) that holds at least one
    event, ordered by day, hour and device type.
    """
    buckets: dict[tuple[int, int, int], dict[str, list[ControlEvent]]] = {}
    device_order = {dev: idx for idx, dev in enumerate(trace.device_types())}

    for ue_id, seq in trace.events.items():
        device = trace.devices[ue_id]
        for ev in seq:
            day, hour = hour_position(ev.timestamp_ms, utc_offset_minutes)
            key = (day, hour, device_order[device])
            buckets.setdefault(key, {}).setdefault(ue_id, []).append(ev)

    devices = trace.device_types()
    return [
        HourSlice(
            day=day,
            hour_of_day=hour,
            device_type=devices[dev_idx],
            events={ue: tuple(seq) for ue, seq in sorted(per_ue.items())},
        )
        for (day, hour, dev_idx), per_ue in sorted(buckets.items())
    ]


def covered_positions(trace: Trace, utc_offset_minutes: int = 0) -> list[int]:
    """Get every absolute hour index between the first and the last event."""
    if trace.start_ms is None or trace.end_ms is None:
        return []
    first = hour_index(trace.start_ms, utc_offset_minutes)
    last = hour_index(trace.end_ms, utc_offset_minutes)
    return list(range(first, last + 1))
