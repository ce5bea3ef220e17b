# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Two-level semi-Markov trace generator.

Every UE runs its own copy of the fitted two-level machine. A top-level
timer and a sub-level timer hold the next sampled transition of each
level; whichever expires first is emitted. A top-level transition drops
the pending sub-level event and starts the sub-machine of the new state.
"""

import logging
from dataclasses import dataclass

from mcn_traffgen.constants import MS_PER_SECOND
from mcn_traffgen.errors import MissingKey
from mcn_traffgen.generator.baseline import generate_baseline
from mcn_traffgen.generator.models import GenConfig, Mode, SynthBatch
from mcn_traffgen.generator.runner import UeEvents, UeRunner, run
from mcn_traffgen.generator.sampling import (
    FirstEventTables,
    UeRandom,
    cumulative,
    pick,
    sample_from_cdf,
)
from mcn_traffgen.machine.states import BOOTSTRAP, MachineState, SubState, step
from mcn_traffgen.model.models import Edge, ModelEntry, TrafficModel, TrajectoryProfile
from mcn_traffgen.trace.models import DeviceType, EventType

logger = logging.getLogger(__name__)

# (deadline ms, event)
Pending = tuple[int, EventType]


@dataclass(frozen=True)
class KeyTables:
    """Sampling tables of one model key."""

    edges: dict[str, tuple[tuple[float, ...], tuple[Edge, ...]]]
    first: FirstEventTables

    @classmethod
    def compile(cls, entry: ModelEntry) -> "KeyTables":
        edges = {
            state: (cumulative([edge.prob for edge in out]), out)
            for state, out in entry.transitions.edges.items()
            if out
        }
        return cls(edges, FirstEventTables(entry.first_event))


class TrafficRunner(UeRunner):
    """Runs UEs on a fitted TrafficModel."""

    def __init__(
        self, model: TrafficModel, cfg: GenConfig, counts: dict[DeviceType, int]
    ) -> None:
        super().__init__(model, cfg, counts)
        self.tables = {
            key: KeyTables.compile(entry) for key, entry in model.entries.items()
        }

    def key_tables(
        self, device: DeviceType, hour: int, profile: TrajectoryProfile
    ) -> KeyTables:
        """Get the tables of the key a trajectory selects at an hour-of-day."""
        key = self.key_at(device, hour, profile)
        try:
            return self.tables[key]
        except KeyError:
            raise MissingKey(device.value, hour, key.cluster) from None

    def run_ue(self, ue_index: int, sink: UeEvents) -> None:
        device = self.device_of(ue_index)
        rand = UeRandom(self.seed, ue_index)
        profile = self.draw_profile(device, rand)
        gen = self.generation

        state: MachineState | None = None
        top: Pending | None = None
        sub: Pending | None = None

        def schedule(tables: KeyTables, name: str, now: int) -> Pending | None:
            compiled = tables.edges.get(name)
            if compiled is None:
                return None
            edge_cum, edges = compiled
            edge = edges[pick(edge_cum, rand.uniform())]
            duration_s = sample_from_cdf(edge.sojourn, rand.uniform())
            return now + max(1, round(duration_s * MS_PER_SECOND)), edge.event

        for h_idx in range(self.duration_hours):
            hour, t0, t1 = self.hour_window(h_idx)
            tables = self.key_tables(device, hour, profile)

            if state is None:
                first = tables.first.draw(rand, t0, t1)
                if first is None:
                    continue
                ts, event = first
                state = step(BOOTSTRAP[event], event, gen)
                sink.emit(ts, ue_index, event, state)
                top = schedule(tables, state.top.value, ts)
                sub = schedule(tables, state.sub.value, ts)
            else:
                if top is None:
                    top = schedule(tables, state.top.value, t0)
                if sub is None and state.sub is not SubState.NONE:
                    sub = schedule(tables, state.sub.value, t0)

            while True:
                if sub is not None and (top is None or sub[0] < top[0]):
                    ts, event = sub
                    if ts >= t1:
                        break
                    state = step(state, event, gen)
                    sink.emit(ts, ue_index, event, state)
                    sub = schedule(tables, state.sub.value, ts)
                elif top is not None:
                    ts, event = top
                    if ts >= t1:
                        break
                    if event is EventType.SRV_REQ and state.sub is SubState.TAU_S_IDLE:
                        # a TAU in IDLE is always released before the UE reconnects
                        state = step(state, EventType.S1_CONN_REL, gen)
                        sink.emit(ts, ue_index, EventType.S1_CONN_REL, state)
                    state = step(state, event, gen)
                    sink.emit(ts, ue_index, event, state)
                    top = schedule(tables, state.top.value, ts)
                    sub = schedule(tables, state.sub.value, ts)
                else:
                    break


def generate(model: TrafficModel, cfg: GenConfig) -> SynthBatch:
    """Synthesize a trace from a fitted model.

    The output depends only on the model and the configuration, not on
    ``cfg.threads``.
    """
    if cfg.mode is Mode.BASELINE:
        return generate_baseline(model, cfg)

    counts = cfg.device_counts(model.trajectories.shares)
    logger.info(
        f"Generating {cfg.ue_count} UEs for {cfg.duration_hours} hours "
        f"from hour {cfg.start_hour}"
    )
    batch = run(TrafficRunner(model, cfg, counts), cfg.threads)
    logger.info(f"Generated {len(batch)} events")
    return batch
