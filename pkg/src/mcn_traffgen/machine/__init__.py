# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""State machine package for MCN Traffgen."""

from mcn_traffgen.machine.states import (
    Level,
    MachineState,
    SubState,
    TopState,
    initial_state,
    step,
)
from mcn_traffgen.machine.replay import (
    BootstrapPolicy,
    ReplayResult,
    SojournSample,
    ViolationReport,
    replay,
    replay_trace,
    validate_sequence,
)

__all__ = [
    "BootstrapPolicy",
    "Level",
    "MachineState",
    "ReplayResult",
    "SojournSample",
    "SubState",
    "TopState",
    "ViolationReport",
    "initial_state",
    "replay",
    "replay_trace",
    "step",
    "validate_sequence",
]
