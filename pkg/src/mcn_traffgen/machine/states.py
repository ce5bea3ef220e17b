# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Two-level hierarchical EMM-ECM state machine.

The top level merges the EMM and ECM machines into DEREGISTERED, CONNECTED
and IDLE. CONNECTED and IDLE each embed a sub-machine driven by HO and TAU
(plus the S1_CONN_REL that releases a TAU in IDLE).
"""

from dataclasses import dataclass
from enum import Enum

from mcn_traffgen.errors import IllegalTransition
from mcn_traffgen.trace.models import EventType, Generation


class TopState(str, Enum):
    """Top-level EMM-ECM states."""

    DEREGISTERED = "DEREGISTERED"
    CONNECTED = "CONNECTED"
    IDLE = "IDLE"


class SubState(str, Enum):
    """Sub-level states, named after the event that enters them."""

    NONE = "NONE"
    SRV_REQ_S = "SRV_REQ_S"
    HO_S = "HO_S"
    TAU_S_CONN = "TAU_S_CONN"
    S1_REL_S_1 = "S1_REL_S_1"
    TAU_S_IDLE = "TAU_S_IDLE"
    S1_REL_S_2 = "S1_REL_S_2"


class Level(str, Enum):
    """Level of the machine a transition belongs to."""

    TOP = "TOP"
    SUB = "SUB"


CONNECTED_SUBS = frozenset({SubState.SRV_REQ_S, SubState.HO_S, SubState.TAU_S_CONN})
IDLE_SUBS = frozenset({SubState.S1_REL_S_1, SubState.TAU_S_IDLE, SubState.S1_REL_S_2})
TAU_SUBS = frozenset({SubState.TAU_S_CONN, SubState.TAU_S_IDLE, SubState.S1_REL_S_2})

_ALLOWED_SUBS: dict[TopState, frozenset[SubState]] = {
    TopState.DEREGISTERED: frozenset({SubState.NONE}),
    TopState.CONNECTED: CONNECTED_SUBS,
    TopState.IDLE: IDLE_SUBS,
}


@dataclass(frozen=True, slots=True)
class MachineState:
    """Joint (top, sub) state."""

    top: TopState
    sub: SubState

    def __post_init__(self) -> None:
        if self.sub not in _ALLOWED_SUBS[self.top]:
            raise ValueError(
                f"Sub-state {self.sub.value} is not under {self.top.value}"
            )

    @classmethod
    def from_names(cls, top: str, sub: str) -> "MachineState":
        """Build a state from its column names."""
        return cls(TopState(top), SubState(sub))

    def __str__(self) -> str:
        return f"({self.top.value}, {self.sub.value})"


DEREGISTERED = MachineState(TopState.DEREGISTERED, SubState.NONE)
CONNECTED_ENTRY = MachineState(TopState.CONNECTED, SubState.SRV_REQ_S)
IDLE_ENTRY = MachineState(TopState.IDLE, SubState.S1_REL_S_1)

ALL_STATES: tuple[MachineState, ...] = tuple(
    MachineState(top, sub)
    for top in TopState
    for sub in SubState
    if sub in _ALLOWED_SUBS[top]
)

# Prior state assumed before the first observed event of a UE
BOOTSTRAP: dict[EventType, MachineState] = {
    EventType.ATCH: DEREGISTERED,
    EventType.SRV_REQ: IDLE_ENTRY,
    EventType.S1_CONN_REL: CONNECTED_ENTRY,
    EventType.HO: CONNECTED_ENTRY,
    EventType.TAU: IDLE_ENTRY,
    EventType.DTCH: IDLE_ENTRY,
}


def _successor(state: MachineState, event: EventType) -> MachineState | None:
    """Apply the transition relation; None when the pair is illegal."""
    top, sub = state.top, state.sub
    if event is EventType.ATCH:
        return CONNECTED_ENTRY if top is TopState.DEREGISTERED else None
    if event is EventType.DTCH:
        return DEREGISTERED if top is not TopState.DEREGISTERED else None
    if event is EventType.S1_CONN_REL:
        if top is TopState.CONNECTED:
            return IDLE_ENTRY
        if sub is SubState.TAU_S_IDLE:
            return MachineState(TopState.IDLE, SubState.S1_REL_S_2)
        return None
    if event is EventType.SRV_REQ:
        if sub in (SubState.S1_REL_S_1, SubState.S1_REL_S_2):
            return CONNECTED_ENTRY
        return None
    if event is EventType.HO:
        if top is TopState.CONNECTED:
            return MachineState(TopState.CONNECTED, SubState.HO_S)
        return None
    if event is EventType.TAU:
        if top is TopState.CONNECTED:
            return MachineState(TopState.CONNECTED, SubState.TAU_S_CONN)
        if sub in (SubState.S1_REL_S_1, SubState.S1_REL_S_2):
            return MachineState(TopState.IDLE, SubState.TAU_S_IDLE)
        return None
    return None


STEP_TABLE: dict[tuple[MachineState, EventType], MachineState] = {
    (state, event): nxt
    for state in ALL_STATES
    for event in EventType
    if (nxt := _successor(state, event)) is not None
}


def initial_state() -> MachineState:
    """Get the start state of every UE."""
    return DEREGISTERED


def step(
    state: MachineState, event: EventType, generation: Generation = Generation.LTE
) -> MachineState:
    """Apply one event to a state."""
    if generation is Generation.FIVE_G and event is EventType.TAU:
        raise IllegalTransition(state, event)
    try:
        return STEP_TABLE[(state, event)]
    except KeyError:
        raise IllegalTransition(state, event) from None


def transition_level(before: MachineState, after: MachineState) -> Level:
    """Get the level at which a transition happened."""
    return Level.TOP if before.top is not after.top else Level.SUB


def edge_endpoints(before: MachineState, after: MachineState) -> tuple[str, str]:
    """Get the (source, target) state names of a transition at its level."""
    if before.top is not after.top:
        return before.top.value, after.top.value
    return before.sub.value, after.sub.value


# Model edges as (source, event, target) names, both levels
def _edge(
    state: MachineState, event: EventType, nxt: MachineState
) -> tuple[str, EventType, str]:
    source, target = edge_endpoints(state, nxt)
    return source, event, target


ALLOWED_EDGES: frozenset[tuple[str, EventType, str]] = frozenset(
    _edge(state, event, nxt) for (state, event), nxt in STEP_TABLE.items()
)


def edge_allowed(
    source: str,
    event: EventType,
    target: str,
    generation: Generation = Generation.LTE,
) -> bool:
    """Check whether a model edge exists in the machine of a generation."""
    if generation is Generation.FIVE_G:
        tau_names = {sub.value for sub in TAU_SUBS}
        if event is EventType.TAU or source in tau_names or target in tau_names:
            return False
    return (source, event, target) in ALLOWED_EDGES


def state_level(name: str) -> Level:
    """Get the level of a state name."""
    if name in TopState.__members__:
        return Level.TOP
    if name in SubState.__members__ and name != SubState.NONE.value:
        return Level.SUB
    raise ValueError(f"Unknown state '{name}'")
