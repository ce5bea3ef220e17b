# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Data models for trace generation."""

import csv
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import IO, Any, Iterator

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from mcn_traffgen.machine.states import MachineState, SubState, TopState
from mcn_traffgen.trace.models import (
    ControlEvent,
    DeviceType,
    EventType,
    Generation,
    Trace,
    event_label,
)

GENERATED_COLUMNS = (
    "timestamp_ms",
    "ue_id",
    "device_type",
    "event_type",
    "top_state",
    "sub_state",
)

# Integer codes of the columns of a SynthBatch
EVENT_CODES: tuple[EventType, ...] = tuple(EventType)
TOP_CODES: tuple[TopState, ...] = tuple(TopState)
SUB_CODES: tuple[SubState, ...] = tuple(SubState)
DEVICE_CODES: tuple[DeviceType, ...] = tuple(DeviceType)
EVENT_INDEX = {event: idx for idx, event in enumerate(EVENT_CODES)}
TOP_INDEX = {top: idx for idx, top in enumerate(TOP_CODES)}
SUB_INDEX = {sub: idx for idx, sub in enumerate(SUB_CODES)}
DEVICE_INDEX = {device: idx for idx, device in enumerate(DEVICE_CODES)}

CSV_BLOCK_ROWS = 100_000


class Mode(str, Enum):
    """Generation method."""

    OURS = "ours"
    BASELINE = "baseline"


class GenConfig(BaseModel):
    """Parameters of one generation run.

    ``device_mix`` holds either UE counts summing to ``ue_count`` or
    fractions summing to 1; without it the model's device shares are used.
    """

    model_config = {"extra": "forbid"}

    ue_count: int = Field(ge=1, description="Number of UEs to synthesize")
    start_hour: int = Field(
        default=0, ge=0, le=23, description="Hour-of-day the trace starts at"
    )
    duration_hours: int = Field(default=1, ge=1, description="Trace length in hours")
    seed: int = Field(default=0, ge=0, description="Seed of every random stream")
    device_mix: dict[DeviceType, float] | None = Field(
        default=None, description="UE counts or fractions per device type"
    )
    mode: Mode = Field(default=Mode.OURS, description="Generation method")
    utc_offset_minutes: int = Field(
        default=0, description="UTC offset of wall-clock hours"
    )
    threads: int = Field(default=1, ge=1, description="Worker processes")

    @field_validator("device_mix")
    @classmethod
    def validate_device_mix(
        cls, v: dict[DeviceType, float] | None
    ) -> dict[DeviceType, float] | None:
        """Validate that mix entries are non-negative."""
        if v is not None and any(share < 0 for share in v.values()):
            raise ValueError("Device mix entries must be non-negative")
        return v

    @model_validator(mode="after")
    def validate_mix_total(self) -> "GenConfig":
        """Validate that the device mix sums to the UE count or to 1."""
        if self.device_mix is None:
            return self
        total = sum(self.device_mix.values())
        counts = all(float(share).is_integer() for share in self.device_mix.values())
        if counts and round(total) == self.ue_count:
            return self
        if abs(total - 1.0) <= 1e-9:
            return self
        raise ValueError(
            f"Device mix sums to {total}; expected {self.ue_count} UEs "
            "or fractions summing to 1"
        )

    def device_counts(
        self, shares: dict[DeviceType, float] | None = None
    ) -> dict[DeviceType, int]:
        """Resolve the number of UEs per device type.

        Fractions are turned into counts by largest remainder.
        """
        mix: dict[DeviceType, Any] | None = self.device_mix or shares
        if not mix:
            raise ValueError("No device mix given and no device shares available")
        total = sum(mix.values())
        if total <= 0:
            raise ValueError("Device mix is empty")
        whole = all(float(v).is_integer() for v in mix.values())
        if whole and round(total) == self.ue_count:
            return {dev: int(mix[dev]) for dev in DEVICE_CODES if mix.get(dev)}

        exact = {
            dev: self.ue_count * mix[dev] / total
            for dev in DEVICE_CODES
            if mix.get(dev)
        }
        counts = {dev: int(np.floor(value)) for dev, value in exact.items()}
        missing = self.ue_count - sum(counts.values())
        by_remainder = sorted(
            exact, key=lambda dev: (-(exact[dev] - counts[dev]), DEVICE_INDEX[dev])
        )
        for dev in by_remainder[:missing]:
            counts[dev] += 1
        return {dev: n for dev, n in counts.items() if n}


@dataclass(frozen=True, slots=True)
class SynthEvent:
    """A generated event with its device type and the state after it."""

    event: ControlEvent
    device_type: DeviceType
    top_state_after: TopState
    sub_state_after: SubState

    @property
    def state(self) -> MachineState:
        """Get the state after the event."""
        return MachineState(self.top_state_after, self.sub_state_after)


@dataclass(frozen=True)
class SynthBatch:
    """Generated events in columns, sorted by (timestamp, UE).

    ``ue`` holds UE indices; ``event``, ``top``, ``sub`` and ``device``
    hold codes into the *_CODES tables.
    """

    timestamp_ms: np.ndarray
    ue: np.ndarray
    event: np.ndarray
    top: np.ndarray
    sub: np.ndarray
    device: np.ndarray
    ue_count: int
    generation: Generation = Generation.LTE

    def __len__(self) -> int:
        return int(self.timestamp_ms.size)

    @property
    def id_width(self) -> int:
        """Digits of the zero-padded UE ids."""
        return len(str(max(self.ue_count - 1, 0)))

    def ue_id(self, index: int) -> str:
        """Get the id of a UE index."""
        return f"ue{index:0{self.id_width}d}"

    def __iter__(self) -> Iterator[SynthEvent]:
        for ts, ue, ev, top, sub, dev in zip(
            self.timestamp_ms.tolist(),
            self.ue.tolist(),
            self.event.tolist(),
            self.top.tolist(),
            self.sub.tolist(),
            self.device.tolist(),
        ):
            yield SynthEvent(
                ControlEvent(ts, self.ue_id(ue), EVENT_CODES[ev]),
                DEVICE_CODES[dev],
                TOP_CODES[top],
                SUB_CODES[sub],
            )

    def event_totals(self) -> dict[tuple[DeviceType, EventType], int]:
        """Count events per (device type, event type)."""
        pairs = Counter(zip(self.device.tolist(), self.event.tolist()))
        return {
            (DEVICE_CODES[dev], EVENT_CODES[ev]): count
            for (dev, ev), count in sorted(pairs.items())
        }

    def to_csv(self, stream: IO[str]) -> None:
        """Write the batch as generator-output CSV."""
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(GENERATED_COLUMNS)
        labels = {
            idx: event_label(ev, self.generation)
            for idx, ev in enumerate(EVENT_CODES)
            if self._labelled(ev)
        }
        tops = [top.value for top in TOP_CODES]
        subs = [sub.value for sub in SUB_CODES]
        devices = [dev.value for dev in DEVICE_CODES]
        width = self.id_width
        for start in range(0, len(self), CSV_BLOCK_ROWS):
            block = slice(start, start + CSV_BLOCK_ROWS)
            writer.writerows(
                (
                    ts,
                    f"ue{ue:0{width}d}",
                    devices[dev],
                    labels[ev],
                    tops[top],
                    subs[sub],
                )
                for ts, ue, dev, ev, top, sub in zip(
                    self.timestamp_ms[block].tolist(),
                    self.ue[block].tolist(),
                    self.device[block].tolist(),
                    self.event[block].tolist(),
                    self.top[block].tolist(),
                    self.sub[block].tolist(),
                )
            )

    def _labelled(self, event: EventType) -> bool:
        return self.generation is Generation.LTE or event is not EventType.TAU

    def to_trace(self) -> Trace:
        """Convert the batch into an annotated trace."""
        events: dict[str, list[ControlEvent]] = {}
        states: dict[str, list[tuple[str, str]]] = {}
        devices: dict[str, DeviceType] = {}
        for synth in self:
            ue_id = synth.event.ue_id
            events.setdefault(ue_id, []).append(synth.event)
            states.setdefault(ue_id, []).append(
                (synth.top_state_after.value, synth.sub_state_after.value)
            )
            devices[ue_id] = synth.device_type
        return Trace(
            events={ue: tuple(seq) for ue, seq in events.items()},
            devices=devices,
            annotations={ue: tuple(seq) for ue, seq in states.items()},
        )
