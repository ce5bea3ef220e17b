# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Data models for control-plane traces."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator

from mcn_traffgen.errors import UnknownEventType


class EventType(str, Enum):
    """Control-plane event types (LTE vocabulary)."""

    ATCH = "ATCH"
    DTCH = "DTCH"
    SRV_REQ = "SRV_REQ"
    S1_CONN_REL = "S1_CONN_REL"
    HO = "HO"
    TAU = "TAU"


class DeviceType(str, Enum):
    """Device types resolved from the TAC."""

    PHONE = "PHONE"
    CONNECTED_CAR = "CONNECTED_CAR"
    TABLET = "TABLET"


class Generation(str, Enum):
    """Radio generation a model or trace is expressed in."""

    LTE = "LTE"
    FIVE_G = "FIVE_G"


# TAU has no 5G counterpart.
EVENT_MAP_5G: dict[EventType, str] = {
    EventType.ATCH: "REGISTER",
    EventType.DTCH: "DEREGISTER",
    EventType.SRV_REQ: "SRV_REQ",
    EventType.S1_CONN_REL: "AN_REL",
    EventType.HO: "HO",
}

_FROM_5G: dict[str, EventType] = {label: ev for ev, label in EVENT_MAP_5G.items()}


def event_label(event: EventType, generation: Generation = Generation.LTE) -> str:
    """Get the label of an event in the vocabulary of a generation."""
    if generation is Generation.FIVE_G:
        try:
            return EVENT_MAP_5G[event]
        except KeyError:
            raise UnknownEventType(event.value) from None
    return event.value


def parse_event_label(
    token: str, generation: Generation | None = None, line_no: int | None = None
) -> EventType:
    """Map an event label to its internal event type.

    With no generation both vocabularies are accepted.
    """
    token = token.strip()
    if generation is not Generation.FIVE_G:
        try:
            return EventType(token)
        except ValueError:
            if generation is Generation.LTE:
                raise UnknownEventType(token, line_no) from None
    try:
        return _FROM_5G[token]
    except KeyError:
        raise UnknownEventType(token, line_no) from None


@dataclass(frozen=True, slots=True)
class ControlEvent:
    """One timestamped, UE-labeled control-plane event."""

    timestamp_ms: int
    ue_id: str
    event_type: EventType


@dataclass(frozen=True)
class TacCatalog:
    """Maps 8-digit TAC strings to device types."""

    entries: dict[str, DeviceType] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for tac in self.entries:
            if len(tac) != 8 or not tac.isdigit():
                raise ValueError(f"TAC '{tac}' is not exactly 8 digits")

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, tac: str) -> DeviceType | None:
        """Get the device type for a TAC, if known."""
        return self.entries.get(tac)


@dataclass(frozen=True)
class Trace:
    """Per-UE time-sorted event sequences with their device types.

    ``annotations`` is present only for traces read from generator output
    and holds the (top, sub) state names after each event.
    """

    events: dict[str, tuple[ControlEvent, ...]]
    devices: dict[str, DeviceType]
    annotations: dict[str, tuple[tuple[str, str], ...]] | None = None
    reordered: int = 0

    @property
    def ue_count(self) -> int:
        """Number of UEs in the trace."""
        return len(self.events)

    @property
    def event_count(self) -> int:
        """Total number of events in the trace."""
        return sum(len(seq) for seq in self.events.values())

    @property
    def start_ms(self) -> int | None:
        """Timestamp of the earliest event."""
        firsts = [seq[0].timestamp_ms for seq in self.events.values() if seq]
        return min(firsts) if firsts else None

    @property
    def end_ms(self) -> int | None:
        """Timestamp of the latest event."""
        lasts = [seq[-1].timestamp_ms for seq in self.events.values() if seq]
        return max(lasts) if lasts else None

    def is_empty(self) -> bool:
        """Check whether the trace holds no events."""
        return self.event_count == 0

    def iter_events(self) -> Iterator[ControlEvent]:
        """Iterate over all events, UE by UE."""
        for ue_id in sorted(self.events):
            yield from self.events[ue_id]

    def ues_of(self, device: DeviceType) -> list[str]:
        """Get the sorted UE ids of a device type."""
        return sorted(ue for ue, dev in self.devices.items() if dev is device)

    def device_types(self) -> list[DeviceType]:
        """Get the device types present, in enum order."""
        present = set(self.devices.values())
        return [dev for dev in DeviceType if dev in present]


@dataclass(frozen=True)
class HourSlice:
    """Events of one device type falling in one wall-clock hour."""

    day: int
    hour_of_day: int
    device_type: DeviceType
    events: dict[str, tuple[ControlEvent, ...]]

    @property
    def event_count(self) -> int:
        """Total number of events in the slice."""
        return sum(len(seq) for seq in self.events.values())
