# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Poisson baseline: fitting and generation.

The baseline walks the EMM-ECM machine with exponential sojourns and runs
independent exponential HO and TAU streams beside it. It reuses the
clusters of the main model.
"""

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field

from mcn_traffgen.clustering.quadtree import ClusterAssignment
from mcn_traffgen.constants import DEFAULT_CDF_MAX_POINTS, MS_PER_SECOND
from mcn_traffgen.distfit.mle import mle_exponential
from mcn_traffgen.errors import MissingKey, ModelError
from mcn_traffgen.generator.models import GenConfig, SynthBatch
from mcn_traffgen.generator.runner import UeEvents, UeRunner, run
from mcn_traffgen.generator.sampling import FirstEventTables, UeRandom, cumulative, pick
from mcn_traffgen.machine.replay import ReplayResult
from mcn_traffgen.machine.states import (
    BOOTSTRAP,
    DEREGISTERED,
    STEP_TABLE,
    Level,
    MachineState,
    step,
)
from mcn_traffgen.model.fit import EVENT_ORDER, FirstObservation, fit_first_event
from mcn_traffgen.model.models import (
    BaselineEntry,
    BaselineModel,
    ModelKey,
    TrafficModel,
    TrajectoryProfile,
)
from mcn_traffgen.trace.hours import covered_positions, hour_index, hour_start_ms
from mcn_traffgen.trace.models import DeviceType, EventType, Trace

logger = logging.getLogger(__name__)

MACHINE_EVENTS = frozenset(
    {EventType.ATCH, EventType.DTCH, EventType.SRV_REQ, EventType.S1_CONN_REL}
)
MOBILITY_EVENTS = (EventType.HO, EventType.TAU)
MIN_GAP_S = 0.001


@dataclass
class _Pool:
    """Observations pooled for one model key."""

    sojourns: dict[str, list[float]] = field(default_factory=lambda: defaultdict(list))
    exits: dict[str, Counter] = field(default_factory=lambda: defaultdict(Counter))
    gaps: dict[EventType, list[float]] = field(
        default_factory=lambda: defaultdict(list)
    )
    counts: Counter = field(default_factory=Counter)


def _stream_rate(gaps: list[float], count: int, exposure_s: float) -> float:
    if gaps:
        return mle_exponential(gaps).rate
    if count and exposure_s > 0:
        return count / exposure_s
    return 0.0


def fit_baseline(
    trace: Trace,
    assignments: dict[tuple[DeviceType, int], ClusterAssignment],
    replays: dict[str, ReplayResult],
    utc_offset_minutes: int = 0,
    cdf_max_points: int = DEFAULT_CDF_MAX_POINTS,
) -> BaselineModel:
    """Fit the Poisson baseline per (device, hour, cluster).

    Top-level sojourns get exponential MLE rates per state. HO and TAU
    inter-arrival gaps get one exponential rate each; a key with a single
    event falls back to count over exposure and a key without events
    disables the stream.
    """
    off = utc_offset_minutes
    positions = covered_positions(trace, off)
    days_at = Counter(position % 24 for position in positions)
    pools: dict[ModelKey, _Pool] = defaultdict(_Pool)
    firsts: dict[tuple[str, int], tuple[EventType, float]] = {}
    mobility_firsts: dict[tuple[str, int], tuple[EventType, float]] = {}

    def key_of(ue: str, device: DeviceType, timestamp_ms: int) -> ModelKey | None:
        hour = hour_index(timestamp_ms, off) % 24
        assignment = assignments.get((device, hour))
        cluster = assignment.cluster_of(ue) if assignment is not None else None
        return ModelKey(device, hour, cluster) if cluster is not None else None

    for ue, result in replays.items():
        device = trace.devices[ue]
        for sample in result.samples:
            if sample.level is not Level.TOP or sample.censored:
                continue
            key = key_of(ue, device, sample.start_ms)
            if key is not None:
                pools[key].sojourns[sample.source].append(sample.duration_s)
                pools[key].exits[sample.source][sample.via] += 1

        previous: dict[EventType, int] = {}
        for ev in trace.events[ue]:
            position = hour_index(ev.timestamp_ms, off)
            offset_s = (ev.timestamp_ms - hour_start_ms(position, off)) / MS_PER_SECOND
            if ev.event_type in MACHINE_EVENTS:
                firsts.setdefault((ue, position), (ev.event_type, offset_s))
                continue
            mobility_firsts.setdefault((ue, position), (ev.event_type, offset_s))
            key = key_of(ue, device, ev.timestamp_ms)
            if key is not None:
                pools[key].counts[ev.event_type] += 1
            if ev.event_type in previous:
                prev_ts = previous[ev.event_type]
                prev_key = key_of(ue, device, prev_ts)
                if prev_key is not None:
                    gap = max((ev.timestamp_ms - prev_ts) / MS_PER_SECOND, MIN_GAP_S)
                    pools[prev_key].gaps[ev.event_type].append(gap)
            previous[ev.event_type] = ev.timestamp_ms

    entries: dict[ModelKey, BaselineEntry] = {}
    for (device, hour), assignment in sorted(assignments.items()):
        hour_positions = [p for p in positions if p % 24 == hour]
        members: dict[int, list[str]] = defaultdict(list)
        for ue, cluster in assignment.labels.items():
            members[cluster].append(ue)
        for cluster, ues in sorted(members.items()):
            key = ModelKey(device, hour, cluster)
            pool = pools.get(key, _Pool())
            exposure_s = len(ues) * days_at[hour] * 3600.0
            observed: list[FirstObservation] = [
                firsts.get((ue, p)) for ue in ues for p in hour_positions
            ]
            mobility: list[FirstObservation] = [
                mobility_firsts.get((ue, p)) for ue in ues for p in hour_positions
            ]
            entries[key] = BaselineEntry(
                exit_rates={
                    state: mle_exponential(values).rate
                    for state, values in sorted(pool.sojourns.items())
                },
                exit_events={
                    state: {
                        ev: n / sum(exits.values())
                        for ev, n in sorted(
                            exits.items(), key=lambda item: EVENT_ORDER[item[0]]
                        )
                    }
                    for state, exits in sorted(pool.exits.items())
                },
                ho_rate=_stream_rate(
                    pool.gaps.get(EventType.HO, []),
                    pool.counts[EventType.HO],
                    exposure_s,
                ),
                tau_rate=_stream_rate(
                    pool.gaps.get(EventType.TAU, []),
                    pool.counts[EventType.TAU],
                    exposure_s,
                ),
                first_event=fit_first_event(observed, cdf_max_points),
                mobility_first_event=fit_first_event(mobility, cdf_max_points),
            )

    logger.info(f"Fitted Poisson baseline for {len(entries)} keys")
    return BaselineModel(entries)


@dataclass(frozen=True)
class _BaselineTables:
    entry: BaselineEntry
    exits: dict[str, tuple[tuple[float, ...], tuple[EventType, ...]]]
    first: FirstEventTables
    mobility: FirstEventTables

    @classmethod
    def compile(cls, entry: BaselineEntry) -> "_BaselineTables":
        exits = {
            state: (cumulative(list(events.values())), tuple(events))
            for state, events in entry.exit_events.items()
            if events and entry.exit_rates.get(state, 0.0) > 0.0
        }
        return cls(
            entry,
            exits,
            FirstEventTables(entry.first_event),
            FirstEventTables(entry.mobility_first_event),
        )

    def stream_rate(self, event: EventType) -> float:
        return self.entry.ho_rate if event is EventType.HO else self.entry.tau_rate


def mobility_state(state: MachineState, event: EventType) -> MachineState:
    """Get the annotation of a HO or TAU emitted while the walk is in ``state``.

    The machine successor is used when the event is legal there; otherwise
    the walk's own state is reported.
    """
    return STEP_TABLE.get((state, event), state)


class BaselineRunner(UeRunner):
    """Runs UEs on a fitted Poisson baseline."""

    def __init__(
        self, model: TrafficModel, cfg: GenConfig, counts: dict[DeviceType, int]
    ) -> None:
        super().__init__(model, cfg, counts)
        if model.baseline is None:
            raise ModelError(
                "Model has no Poisson baseline; refit it to generate baseline traces"
            )
        self.tables = {
            key: _BaselineTables.compile(entry)
            for key, entry in model.baseline.entries.items()
        }

    def key_tables(
        self, device: DeviceType, hour: int, profile: TrajectoryProfile
    ) -> _BaselineTables:
        key = self.key_at(device, hour, profile)
        try:
            return self.tables[key]
        except KeyError:
            raise MissingKey(device.value, hour, key.cluster) from None

    def run_ue(self, ue_index: int, sink: UeEvents) -> None:
        device = self.device_of(ue_index)
        walk_rand = UeRandom(self.seed, ue_index, 1)
        stream_rand = UeRandom(self.seed, ue_index, 2)
        profile = self.draw_profile(device, UeRandom(self.seed, ue_index))
        gen = self.generation

        # The walk and the streams each open with a drawn first event
        walk: MachineState | None = None
        walk_next: tuple[int, EventType] | None = None
        streaming = False
        stream_next: dict[EventType, int | None] = {ev: None for ev in MOBILITY_EVENTS}

        def schedule_walk(
            tables: _BaselineTables, state: MachineState, now: int
        ) -> tuple[int, EventType] | None:
            compiled = tables.exits.get(state.top.value)
            if compiled is None:
                return None
            exit_cum, events = compiled
            event = events[pick(exit_cum, walk_rand.uniform())]
            rate = tables.entry.exit_rates[state.top.value]
            delay = max(1, round(walk_rand.exponential(rate) * MS_PER_SECOND))
            return now + delay, event

        def schedule_stream(
            tables: _BaselineTables, event: EventType, now: int
        ) -> int | None:
            rate = tables.stream_rate(event)
            if rate <= 0.0:
                return None
            return now + max(1, round(stream_rand.exponential(rate) * MS_PER_SECOND))

        for h_idx in range(self.duration_hours):
            hour, t0, t1 = self.hour_window(h_idx)
            tables = self.key_tables(device, hour, profile)

            if walk is None:
                walk_next = tables.first.draw(walk_rand, t0, t1)
            elif walk_next is None:
                walk_next = schedule_walk(tables, walk, t0)

            opening: tuple[int, EventType] | None = None
            if not streaming:
                opening = tables.mobility.draw(stream_rand, t0, t1)
            else:
                for ev in MOBILITY_EVENTS:
                    if stream_next[ev] is None:
                        stream_next[ev] = schedule_stream(tables, ev, t0)

            while True:
                due = [
                    (ts, EVENT_ORDER[ev], ev)
                    for ev, ts in stream_next.items()
                    if ts is not None
                ]
                if opening is not None:
                    due.append((opening[0], EVENT_ORDER[opening[1]], opening[1]))
                stream = min(due) if due else None

                # ties go to the walk
                walk_due = walk_next is not None and (
                    stream is None or walk_next[0] <= stream[0]
                )
                if walk_next is not None and walk_due:
                    ts, event = walk_next
                    if ts >= t1:
                        break
                    prior = walk if walk is not None else BOOTSTRAP[event]
                    walk = step(prior, event, gen)
                    sink.emit(ts, ue_index, event, walk)
                    walk_next = schedule_walk(tables, walk, ts)
                elif stream is not None:
                    ts, _, event = stream
                    if ts >= t1:
                        break
                    annotation = mobility_state(walk or DEREGISTERED, event)
                    sink.emit(ts, ue_index, event, annotation)
                    if opening is not None:
                        opening = None
                        streaming = True
                        for ev in MOBILITY_EVENTS:
                            stream_next[ev] = schedule_stream(tables, ev, ts)
                    else:
                        stream_next[event] = schedule_stream(tables, event, ts)
                else:
                    break


def generate_baseline(model: TrafficModel, cfg: GenConfig) -> SynthBatch:
    """Synthesize a trace from the Poisson baseline of a model."""
    counts = cfg.device_counts(model.trajectories.shares)
    logger.info(
        f"Generating {cfg.ue_count} baseline UEs for {cfg.duration_hours} hours "
        f"from hour {cfg.start_hour}"
    )
    batch = run(BaselineRunner(model, cfg, counts), cfg.threads)
    logger.info(f"Generated {len(batch)} baseline events")
    return batch
