# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Trace replay through the two-level state machine."""

import csv
import logging
from dataclasses import dataclass
from enum import Enum
from typing import IO, Sequence

from mcn_traffgen.errors import IllegalTransition
from mcn_traffgen.machine.states import (
    BOOTSTRAP,
    Level,
    MachineState,
    SubState,
    initial_state,
    step,
)
from mcn_traffgen.trace.models import (
    ControlEvent,
    EventType,
    Generation,
    Trace,
    event_label,
)

logger = logging.getLogger(__name__)

ANNOTATED_REPLAY_COLUMNS = (
    "timestamp_ms",
    "ue_id",
    "event_type",
    "top_state",
    "sub_state",
)


class BootstrapPolicy(str, Enum):
    """How replay chooses the state before a UE's first observed event."""

    INFER_FROM_FIRST_EVENT = "infer"
    FROM_DEREGISTERED = "deregistered"


@dataclass(frozen=True, slots=True)
class SojournSample:
    """Time spent in a state before leaving it.

    ``source``/``target`` are state names at the sample's level. Censored
    samples are sub-level sojourns cut short by a top-level transition;
    their ``via`` is the preempting top-level event.
    """

    source: str
    target: str
    via: EventType
    start_ms: int
    end_ms: int
    level: Level
    censored: bool = False

    @property
    def duration_ms(self) -> int:
        """Sojourn length; completed sojourns are at least 1 ms."""
        span = self.end_ms - self.start_ms
        return span if self.censored else max(span, 1)

    @property
    def duration_s(self) -> float:
        """Sojourn length in seconds."""
        return self.duration_ms / 1000.0


@dataclass(frozen=True, slots=True)
class ViolationReport:
    """An event the machine does not accept."""

    ue_id: str
    index: int
    state: MachineState
    event: EventType
    rule: str


@dataclass(frozen=True)
class ReplayResult:
    """Outcome of replaying one UE's events."""

    annotated: tuple[tuple[ControlEvent, MachineState], ...]
    samples: tuple[SojournSample, ...]
    violations: tuple[ViolationReport, ...]
    prior: MachineState | None = None


def replay(
    events: Sequence[ControlEvent],
    bootstrap: BootstrapPolicy = BootstrapPolicy.INFER_FROM_FIRST_EVENT,
    generation: Generation = Generation.LTE,
) -> ReplayResult:
    """Replay a UE's time-sorted events, annotating states and sojourns.

    On a violation the state is resynchronized from the bootstrap table
    applied to the offending event; open sojourns are discarded.
    """
    annotated: list[tuple[ControlEvent, MachineState]] = []
    samples: list[SojournSample] = []
    violations: list[ViolationReport] = []
    if not events:
        return ReplayResult((), (), ())

    first = events[0].event_type
    if bootstrap is BootstrapPolicy.INFER_FROM_FIRST_EVENT:
        prior = BOOTSTRAP[first]
    else:
        prior = initial_state()
    state = prior
    # Entry times are unknown until the first transition is seen
    top_entry: int | None = None
    sub_entry: int | None = None

    for index, ev in enumerate(events):
        t = ev.timestamp_ms
        try:
            nxt = step(state, ev.event_type, generation)
        except IllegalTransition:
            violations.append(
                ViolationReport(
                    ue_id=ev.ue_id,
                    index=index,
                    state=state,
                    event=ev.event_type,
                    rule=f"{ev.event_type.value} is not allowed from {state}",
                )
            )
            resync = BOOTSTRAP[ev.event_type]
            top_entry = sub_entry = None
            try:
                nxt = step(resync, ev.event_type, generation)
            except IllegalTransition:
                annotated.append((ev, state))
                continue
            state = resync

        if nxt.top is not state.top:
            if top_entry is not None:
                samples.append(
                    SojournSample(
                        state.top.value,
                        nxt.top.value,
                        ev.event_type,
                        top_entry,
                        t,
                        Level.TOP,
                    )
                )
            if sub_entry is not None and state.sub is not SubState.NONE:
                samples.append(
                    SojournSample(
                        state.sub.value,
                        nxt.sub.value,
                        ev.event_type,
                        sub_entry,
                        t,
                        Level.SUB,
                        censored=True,
                    )
                )
            top_entry = t
            sub_entry = t if nxt.sub is not SubState.NONE else None
        else:
            if sub_entry is not None:
                samples.append(
                    SojournSample(
                        state.sub.value,
                        nxt.sub.value,
                        ev.event_type,
                        sub_entry,
                        t,
                        Level.SUB,
                    )
                )
            sub_entry = t
        state = nxt
        annotated.append((ev, nxt))

    return ReplayResult(tuple(annotated), tuple(samples), tuple(violations), prior)


def validate_sequence(
    events: Sequence[ControlEvent],
    generation: Generation = Generation.LTE,
    bootstrap: BootstrapPolicy = BootstrapPolicy.INFER_FROM_FIRST_EVENT,
) -> list[ViolationReport]:
    """List the machine violations of a UE's event sequence."""
    return list(replay(events, bootstrap, generation).violations)


def replay_trace(
    trace: Trace,
    bootstrap: BootstrapPolicy = BootstrapPolicy.INFER_FROM_FIRST_EVENT,
    generation: Generation = Generation.LTE,
) -> dict[str, ReplayResult]:
    """Replay every UE of a trace."""
    results = {
        ue: replay(seq, bootstrap, generation) for ue, seq in trace.events.items()
    }
    violations = sum(len(r.violations) for r in results.values())
    if violations:
        logger.warning(f"Replay resynchronized after {violations} violations")
    return results


def write_annotated(
    results: dict[str, ReplayResult],
    stream: IO[str],
    generation: Generation = Generation.LTE,
) -> None:
    """Write replay annotations as CSV."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(ANNOTATED_REPLAY_COLUMNS)
    rows = [
        (
            ev.timestamp_ms,
            ev.ue_id,
            event_label(ev.event_type, generation),
            state.top.value,
            state.sub.value,
        )
        for result in results.values()
        for ev, state in result.annotated
    ]
    rows.sort(key=lambda row: (row[0], row[1]))
    writer.writerows(rows)
