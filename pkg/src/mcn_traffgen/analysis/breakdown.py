# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Event-type and state-time breakdowns of a trace."""

import csv
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import IO, Iterator

from mcn_traffgen.machine.replay import BootstrapPolicy, replay
from mcn_traffgen.machine.states import BOOTSTRAP, TopState, initial_state
from mcn_traffgen.trace.models import (
    ControlEvent,
    DeviceType,
    EventType,
    Generation,
    Trace,
    event_label,
)

logger = logging.getLogger(__name__)

BREAKDOWN_COLUMNS = ("device", "event", "pct")
STATE_TIME_COLUMNS = ("device", "state", "pct")

REGISTERED = "REGISTERED"
SPLIT_EVENTS = (EventType.HO, EventType.TAU)
TOP_LABELS = {
    TopState.CONNECTED: "CONN",
    TopState.IDLE: "IDLE",
    TopState.DEREGISTERED: "DEREG",
}


def event_states(
    trace: Trace,
    ue_id: str,
    bootstrap: BootstrapPolicy = BootstrapPolicy.INFER_FROM_FIRST_EVENT,
    generation: Generation = Generation.LTE,
) -> Iterator[tuple[ControlEvent, TopState]]:
    """Yield each event of a UE with the top state it leaves the UE in.

    Generator output carries its own state columns; other traces are replayed.
    An event the machine rejects is paired with the state it arrived in, not
    the state the replay resynchronizes to.
    """
    events = trace.events[ue_id]
    if trace.annotations is not None and ue_id in trace.annotations:
        for ev, (top, _) in zip(events, trace.annotations[ue_id]):
            yield ev, TopState(top)
        return
    result = replay(events, bootstrap, generation)
    arrived_in = {v.index: v.state.top for v in result.violations}
    for index, (ev, state) in enumerate(result.annotated):
        yield ev, arrived_in.get(index, state.top)


@dataclass(frozen=True)
class BreakdownRow:
    """Share of one event label among a device type's events."""

    device: DeviceType
    event: str
    count: int
    pct: float


@dataclass(frozen=True)
class BreakdownTable:
    """Event breakdown of a trace."""

    rows: tuple[BreakdownRow, ...]

    def pct(self, device: DeviceType, event: str) -> float:
        """Get the share of a label, 0 when absent."""
        for row in self.rows:
            if row.device is device and row.event == event:
                return row.pct
        return 0.0

    def total_pct(self, device: DeviceType) -> float:
        """Get the sum of a device type's shares."""
        return sum(row.pct for row in self.rows if row.device is device)


def breakdown_label(event: EventType, top: TopState, generation: Generation) -> str:
    """Get the breakdown row of an event; HO and TAU carry their top state."""
    if generation is Generation.FIVE_G and event is EventType.TAU:
        label = event.value
    else:
        label = event_label(event, generation)
    if event in SPLIT_EVENTS:
        return f"{label} ({TOP_LABELS[top]})"
    return label


def event_breakdown(
    trace: Trace,
    bootstrap: BootstrapPolicy = BootstrapPolicy.INFER_FROM_FIRST_EVENT,
    generation: Generation = Generation.LTE,
) -> BreakdownTable:
    """Compute the percentage of each event type per device type.

    HO and TAU are split by the top state they occur in. Rows of the
    DEREGISTERED split appear only when such events exist.
    """
    counts: dict[DeviceType, Counter] = defaultdict(Counter)
    for ue_id in sorted(trace.events):
        device = trace.devices[ue_id]
        for ev, top in event_states(trace, ue_id, bootstrap, generation):
            counts[device][(ev.event_type, top)] += 1

    rows: list[BreakdownRow] = []
    for device in trace.device_types():
        per_device = counts[device]
        total = sum(per_device.values())
        if not total:
            continue
        for event in EventType:
            if event not in SPLIT_EVENTS:
                n = sum(c for (ev, _), c in per_device.items() if ev is event)
                label = breakdown_label(event, TopState.DEREGISTERED, generation)
                rows.append(BreakdownRow(device, label, n, 100.0 * n / total))
                continue
            for top in (TopState.CONNECTED, TopState.IDLE, TopState.DEREGISTERED):
                n = per_device[(event, top)]
                optional = top is TopState.DEREGISTERED or (
                    event is EventType.TAU and generation is Generation.FIVE_G
                )
                if optional and not n:
                    continue
                label = breakdown_label(event, top, generation)
                rows.append(BreakdownRow(device, label, n, 100.0 * n / total))
    return BreakdownTable(tuple(rows))


def write_breakdown(table: BreakdownTable, stream: IO[str]) -> None:
    """Write a breakdown table as CSV."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(BREAKDOWN_COLUMNS)
    for row in table.rows:
        writer.writerow((row.device.value, row.event, f"{row.pct:.3f}"))


def state_time_breakdown(
    trace: Trace,
    bootstrap: BootstrapPolicy = BootstrapPolicy.INFER_FROM_FIRST_EVENT,
    generation: Generation = Generation.LTE,
) -> dict[DeviceType, dict[str, float]]:
    """Compute the share of time spent in each top state per device type.

    Time is measured over the trace span. Before its first event a UE is in
    its bootstrap prior state; after its last event it stays in the last
    state. REGISTERED is the sum of CONNECTED and IDLE.
    """
    start, end = trace.start_ms, trace.end_ms
    if start is None or end is None:
        return {}
    span = end - start

    time_in: dict[DeviceType, Counter] = defaultdict(Counter)
    for ue_id in sorted(trace.events):
        events = trace.events[ue_id]
        if not events:
            continue
        device = trace.devices[ue_id]
        if bootstrap is BootstrapPolicy.INFER_FROM_FIRST_EVENT:
            current = BOOTSTRAP[events[0].event_type].top
        else:
            current = initial_state().top
        since = start
        for ev, top in event_states(trace, ue_id, bootstrap, generation):
            time_in[device][current] += ev.timestamp_ms - since
            current, since = top, ev.timestamp_ms
        if span:
            time_in[device][current] += end - since
        else:
            # A zero-length span counts each UE once in its final state
            time_in[device][current] += 1

    shares: dict[DeviceType, dict[str, float]] = {}
    for device in trace.device_types():
        per_device = time_in[device]
        total = sum(per_device.values())
        if not total:
            continue
        connected = 100.0 * per_device[TopState.CONNECTED] / total
        idle = 100.0 * per_device[TopState.IDLE] / total
        deregistered = 100.0 * per_device[TopState.DEREGISTERED] / total
        shares[device] = {
            REGISTERED: connected + idle,
            TopState.DEREGISTERED.value: deregistered,
            TopState.CONNECTED.value: connected,
            TopState.IDLE.value: idle,
        }
    return shares


def write_state_time(
    shares: dict[DeviceType, dict[str, float]], stream: IO[str]
) -> None:
    """Write a state-time breakdown as CSV."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(STATE_TIME_COLUMNS)
    for device, per_state in shares.items():
        for state, pct in per_state.items():
            writer.writerow((device.value, state, f"{pct:.3f}"))
