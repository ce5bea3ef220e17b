# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Per-UE generation runs and their deterministic parallel merge."""

import logging
from abc import ABC, abstractmethod
from bisect import bisect_right
from concurrent.futures import ProcessPoolExecutor
from itertools import accumulate

import numpy as np

from mcn_traffgen.constants import MS_PER_HOUR, MS_PER_SECOND
from mcn_traffgen.errors import MissingKey
from mcn_traffgen.generator.models import (
    DEVICE_CODES,
    DEVICE_INDEX,
    EVENT_INDEX,
    SUB_INDEX,
    TOP_INDEX,
    GenConfig,
    SynthBatch,
)
from mcn_traffgen.generator.sampling import UeRandom, cumulative, pick
from mcn_traffgen.machine.states import MachineState
from mcn_traffgen.model.models import ModelKey, TrafficModel, TrajectoryProfile
from mcn_traffgen.trace.models import DeviceType, EventType

logger = logging.getLogger(__name__)

CHUNKS_PER_WORKER = 4

Columns = tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]
# Cumulative trajectory weights and the profiles they index
CompiledProfiles = tuple[tuple[float, ...], tuple[TrajectoryProfile, ...]]


def run_start_ms(start_hour: int, utc_offset_minutes: int = 0) -> int:
    """Get the epoch millisecond at which local hour ``start_hour`` of day 0 begins."""
    seconds = (start_hour * 3600 - utc_offset_minutes * 60) % 86400
    return seconds * MS_PER_SECOND


class UeEvents:
    """Column buffers filled by UE runs."""

    def __init__(self) -> None:
        self.timestamps: list[int] = []
        self.ues: list[int] = []
        self.events: list[int] = []
        self.tops: list[int] = []
        self.subs: list[int] = []

    def emit(
        self, ts: int, ue_index: int, event: EventType, state: MachineState
    ) -> None:
        """Record an event and the state it leads to."""
        self.timestamps.append(ts)
        self.ues.append(ue_index)
        self.events.append(EVENT_INDEX[event])
        self.tops.append(TOP_INDEX[state.top])
        self.subs.append(SUB_INDEX[state.sub])

    def columns(self) -> Columns:
        return (
            np.asarray(self.timestamps, dtype=np.int64),
            np.asarray(self.ues, dtype=np.int64),
            np.asarray(self.events, dtype=np.int8),
            np.asarray(self.tops, dtype=np.int8),
            np.asarray(self.subs, dtype=np.int8),
        )


class UeRunner(ABC):
    """Generates the events of single UEs for one run.

    UEs are laid out contiguously by device type in enum order. Subclasses
    hold the compiled model and must only depend on it, the configuration
    and the UE index, so a UE's events do not depend on the worker that
    generates it.
    """

    def __init__(
        self, model: TrafficModel, cfg: GenConfig, counts: dict[DeviceType, int]
    ) -> None:
        self.seed = cfg.seed
        self.start_hour = cfg.start_hour
        self.duration_hours = cfg.duration_hours
        self.start_ms = run_start_ms(cfg.start_hour, cfg.utc_offset_minutes)
        self.generation = model.generation
        self.counts = {dev: counts[dev] for dev in DEVICE_CODES if counts.get(dev)}
        self._bounds = list(accumulate(self.counts.values()))
        self._devices = list(self.counts)
        self.hour_position = {
            hour: pos for pos, hour in enumerate(model.trajectories.hours)
        }
        self.profiles: dict[DeviceType, CompiledProfiles] = {
            dev: (cumulative([p.weight for p in profiles]), profiles)
            for dev, profiles in model.trajectories.profiles.items()
            if profiles
        }
        for device in self.counts:
            if device not in self.profiles:
                raise MissingKey(device.value, self.start_hour, None)

    @property
    def ue_count(self) -> int:
        return self._bounds[-1] if self._bounds else 0

    def device_of(self, ue_index: int) -> DeviceType:
        """Get the device type of a UE index."""
        return self._devices[bisect_right(self._bounds, ue_index)]

    def hour_window(self, h_idx: int) -> tuple[int, int, int]:
        """Get (hour-of-day, start ms, end ms) of the h_idx-th generated hour."""
        t0 = self.start_ms + h_idx * MS_PER_HOUR
        return (self.start_hour + h_idx) % 24, t0, t0 + MS_PER_HOUR

    def draw_profile(self, device: DeviceType, rand: UeRandom) -> TrajectoryProfile:
        """Draw the cluster trajectory of a UE."""
        cum, profiles = self.profiles[device]
        return profiles[pick(cum, rand.uniform())]

    def key_at(
        self, device: DeviceType, hour: int, profile: TrajectoryProfile
    ) -> ModelKey:
        """Get the key a trajectory selects at an hour-of-day."""
        position = self.hour_position.get(hour)
        if position is None:
            raise MissingKey(device.value, hour, None)
        return ModelKey(device, hour, profile.clusters[position])

    def device_column(self) -> np.ndarray:
        """Get the device code of every UE index."""
        codes = [DEVICE_INDEX[dev] for dev in self.counts]
        return np.repeat(np.asarray(codes, dtype=np.int8), list(self.counts.values()))

    @abstractmethod
    def run_ue(self, ue_index: int, sink: UeEvents) -> None:
        """Generate all events of one UE into a sink."""

    def run_range(self, start: int, stop: int) -> Columns:
        """Generate the UEs of an index range."""
        sink = UeEvents()
        for ue_index in range(start, stop):
            self.run_ue(ue_index, sink)
        return sink.columns()


_worker_runner: UeRunner | None = None


def _init_worker(runner: UeRunner) -> None:
    global _worker_runner
    _worker_runner = runner


def _run_in_worker(bounds: tuple[int, int]) -> Columns:
    assert _worker_runner is not None
    return _worker_runner.run_range(*bounds)


def _chunks(ue_count: int, parts: int) -> list[tuple[int, int]]:
    edges = np.linspace(0, ue_count, parts + 1).astype(int).tolist()
    return [(lo, hi) for lo, hi in zip(edges, edges[1:]) if hi > lo]


def run(runner: UeRunner, threads: int = 1) -> SynthBatch:
    """Run every UE and merge the output by (timestamp, UE index)."""
    ue_count = runner.ue_count
    if threads <= 1 or ue_count < 2:
        parts = [runner.run_range(0, ue_count)]
    else:
        chunks = _chunks(ue_count, threads * CHUNKS_PER_WORKER)
        logger.debug(
            f"Generating {ue_count} UEs in {len(chunks)} chunks on {threads} workers"
        )
        with ProcessPoolExecutor(
            max_workers=threads, initializer=_init_worker, initargs=(runner,)
        ) as executor:
            parts = list(executor.map(_run_in_worker, chunks))

    ts, ue, ev, top, sub = (np.concatenate(column) for column in zip(*parts))
    # lexsort is stable: same-millisecond events of a UE keep their emission order
    order = np.lexsort((ue, ts))
    ue = ue[order]
    return SynthBatch(
        timestamp_ms=ts[order],
        ue=ue,
        event=ev[order],
        top=top[order],
        sub=sub[order],
        device=runner.device_column()[ue],
        ue_count=ue_count,
        generation=runner.generation,
    )
