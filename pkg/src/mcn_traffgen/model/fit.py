# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Fitting of the two-level semi-Markov traffic model."""

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from mcn_traffgen.clustering.features import extract_features
from mcn_traffgen.clustering.quadtree import (
    ClusterAssignment,
    ClusterTree,
    adaptive_cluster,
)
from mcn_traffgen.config.schema import Settings
from mcn_traffgen.constants import (
    DEFAULT_CDF_MAX_POINTS,
    DEFAULT_THETA_F,
    DEFAULT_THETA_N,
)
from mcn_traffgen.errors import InsufficientData
from mcn_traffgen.machine.replay import (
    BootstrapPolicy,
    ReplayResult,
    SojournSample,
    replay_trace,
)
from mcn_traffgen.machine.states import SubState
from mcn_traffgen.model.cdf import EmpiricalCdf
from mcn_traffgen.model.models import (
    Edge,
    FirstEventModel,
    ModelEntry,
    ModelKey,
    TrafficModel,
    TrajectoryModel,
    TrajectoryProfile,
    TransitionModel,
)
from mcn_traffgen.trace.hours import covered_positions, hour_index, hour_start_ms
from mcn_traffgen.trace.models import (
    ControlEvent,
    DeviceType,
    EventType,
    Generation,
    Trace,
)

logger = logging.getLogger(__name__)

EVENT_ORDER = {event: idx for idx, event in enumerate(EventType)}

# (first event, offset within the hour in seconds), or None for a silent hour
FirstObservation = tuple[EventType, float] | None


def estimate_transitions(
    samples: Iterable[SojournSample], max_points: int = DEFAULT_CDF_MAX_POINTS
) -> TransitionModel:
    """Estimate transition probabilities and sojourn CDFs from pooled samples.

    Censored samples are left out of both.
    """
    durations: dict[str, dict[tuple[EventType, str], list[float]]] = defaultdict(
        lambda: defaultdict(list)
    )
    for sample in samples:
        if sample.censored:
            continue
        durations[sample.source][(sample.via, sample.target)].append(sample.duration_s)

    edges: dict[str, tuple[Edge, ...]] = {}
    for source in sorted(durations):
        per_edge = durations[source]
        total = sum(len(values) for values in per_edge.values())
        ordered = sorted(per_edge, key=lambda pair: (EVENT_ORDER[pair[0]], pair[1]))
        source_edges = []
        for event, target in ordered:
            values = per_edge[(event, target)]
            source_edges.append(
                Edge(
                    event=event,
                    target=target,
                    prob=len(values) / total,
                    sojourn=EmpiricalCdf.from_samples(values, max_points),
                    count=len(values),
                )
            )
        edges[source] = tuple(source_edges)
    return TransitionModel(edges)


def fit_first_event(
    observations: Iterable[FirstObservation], max_points: int = DEFAULT_CDF_MAX_POINTS
) -> FirstEventModel:
    """Estimate first-event probabilities, the silent atom and start offsets."""
    observed = list(observations)
    if not observed:
        return FirstEventModel.silent_only()

    firsts = Counter(obs[0] for obs in observed if obs is not None)
    offsets = [obs[1] for obs in observed if obs is not None]
    total = len(observed)
    silent = (total - len(offsets)) / total
    if not offsets:
        return FirstEventModel.silent_only()

    probs = {
        event: firsts[event] / total for event in sorted(firsts, key=EVENT_ORDER.get)
    }
    offset_cdf = EmpiricalCdf.from_samples(offsets, max_points)
    return FirstEventModel(probs, silent, offset_cdf)


@dataclass
class _UeHours:
    """One UE's events, samples and hour openers indexed by hour."""

    events: dict[int, list[ControlEvent]] = field(
        default_factory=lambda: defaultdict(list)
    )
    samples: dict[int, list[SojournSample]] = field(
        default_factory=lambda: defaultdict(list)
    )
    states: dict[int, set[str]] = field(default_factory=lambda: defaultdict(set))
    firsts: dict[int, tuple[EventType, float]] = field(default_factory=dict)


def _index_ue(result: ReplayResult, utc_offset_minutes: int) -> _UeHours:
    indexed = _UeHours()
    for ev, state in result.annotated:
        position = hour_index(ev.timestamp_ms, utc_offset_minutes)
        hour = position % 24
        indexed.events[hour].append(ev)
        indexed.states[hour].add(state.top.value)
        if state.sub is not SubState.NONE:
            indexed.states[hour].add(state.sub.value)
        if position not in indexed.firsts:
            start = hour_start_ms(position, utc_offset_minutes)
            offset_s = (ev.timestamp_ms - start) / 1000.0
            indexed.firsts[position] = (ev.event_type, offset_s)
    for sample in result.samples:
        hour = hour_index(sample.start_ms, utc_offset_minutes) % 24
        indexed.samples[hour].append(sample)
    return indexed


class ModelFitter:
    """Fits a TrafficModel from a parsed trace.

    The clustering built along the way stays available on ``trees`` and
    ``assignments`` for reports and for the baseline.
    """

    def __init__(
        self,
        theta_f: float = DEFAULT_THETA_F,
        theta_n: int = DEFAULT_THETA_N,
        thresholds: dict[str, float] | None = None,
        utc_offset_minutes: int = 0,
        cdf_max_points: int = DEFAULT_CDF_MAX_POINTS,
        generation: Generation = Generation.LTE,
        bootstrap: BootstrapPolicy = BootstrapPolicy.INFER_FROM_FIRST_EVENT,
        with_baseline: bool = True,
    ) -> None:
        self.theta_f = theta_f
        self.theta_n = theta_n
        self.thresholds = thresholds
        self.utc_offset_minutes = utc_offset_minutes
        self.cdf_max_points = cdf_max_points
        self.generation = generation
        self.bootstrap = bootstrap
        self.with_baseline = with_baseline
        self.trees: list[ClusterTree] = []
        self.assignments: dict[tuple[DeviceType, int], ClusterAssignment] = {}
        self.insufficient: list[tuple[ModelKey, str]] = []

    @classmethod
    def from_settings(cls, settings: Settings, **overrides: object) -> "ModelFitter":
        """Build a fitter from settings, with keyword overrides."""
        options: dict[str, object] = {
            "theta_f": settings.ThetaF,
            "theta_n": settings.ThetaN,
            "thresholds": settings.FeatureThresholds or None,
            "utc_offset_minutes": settings.UtcOffsetMinutes,
            "cdf_max_points": settings.CdfMaxPoints,
        }
        options.update(overrides)
        return cls(**options)  # type: ignore[arg-type]

    def fit(self, trace: Trace) -> TrafficModel:
        """Run the whole fitting pipeline."""
        if trace.is_empty():
            raise InsufficientData("Trace holds no events")

        off = self.utc_offset_minutes
        replays = replay_trace(trace, self.bootstrap, self.generation)
        indexed = {ue: _index_ue(result, off) for ue, result in replays.items()}
        positions = covered_positions(trace, off)
        days_at = Counter(position % 24 for position in positions)
        hours = tuple(sorted(days_at))
        logger.info(
            f"Fitting {trace.ue_count} UEs, {trace.event_count} events "
            f"over {len(positions)} hours"
        )

        self.trees = []
        self.assignments = {}
        self.insufficient = []
        entries: dict[ModelKey, ModelEntry] = {}
        weights: dict[tuple[DeviceType, int], dict[int, float]] = {}

        for device in trace.device_types():
            ues = trace.ues_of(device)
            for hour in hours:
                features = [
                    (
                        ue,
                        extract_features(
                            indexed[ue].events.get(hour, ()),
                            indexed[ue].samples.get(hour, ()),
                            days_at[hour],
                        ),
                    )
                    for ue in ues
                ]
                tree, assignment = adaptive_cluster(
                    features, self.theta_f, self.theta_n, self.thresholds, device, hour
                )
                self.trees.append(tree)
                self.assignments[(device, hour)] = assignment
                weights[(device, hour)] = assignment.weights

                hour_positions = [p for p in positions if p % 24 == hour]
                for leaf in tree.leaves():
                    assert leaf.cluster_id is not None
                    key = ModelKey(device, hour, leaf.cluster_id)
                    entries[key] = self._fit_key(
                        key, leaf.members, indexed, hour_positions
                    )

        if self.insufficient:
            logger.warning(
                f"{len(self.insufficient)} occupied states have no completed "
                "transitions; their edges were dropped"
            )

        baseline = None
        if self.with_baseline:
            from mcn_traffgen.generator.baseline import fit_baseline

            baseline = fit_baseline(
                trace, self.assignments, replays, off, self.cdf_max_points
            )

        return TrafficModel(
            generation=self.generation,
            entries=entries,
            weights=weights,
            trajectories=self._trajectories(trace, hours),
            baseline=baseline,
        )

    def _fit_key(
        self,
        key: ModelKey,
        members: Sequence[str],
        indexed: dict[str, _UeHours],
        hour_positions: Sequence[int],
    ) -> ModelEntry:
        samples = [s for ue in members for s in indexed[ue].samples.get(key.hour, ())]
        transitions = estimate_transitions(samples, self.cdf_max_points)

        occupied = set().union(
            *(indexed[ue].states.get(key.hour, set()) for ue in members)
        )
        for state in sorted(occupied - set(transitions.states())):
            self.insufficient.append((key, state))
            logger.debug(f"No completed transitions out of {state} for {key}")

        observations: list[FirstObservation] = [
            indexed[ue].firsts.get(position)
            for ue in members
            for position in hour_positions
        ]
        first_event = fit_first_event(observations, self.cdf_max_points)
        return ModelEntry(transitions, first_event)

    def _trajectories(self, trace: Trace, hours: tuple[int, ...]) -> TrajectoryModel:
        profiles: dict[DeviceType, tuple[TrajectoryProfile, ...]] = {}
        shares: dict[DeviceType, float] = {}
        for device in trace.device_types():
            ues = trace.ues_of(device)
            shares[device] = len(ues) / trace.ue_count
            counts = Counter(
                tuple(self.assignments[(device, hour)].labels[ue] for hour in hours)
                for ue in ues
            )
            ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
            profiles[device] = tuple(
                TrajectoryProfile(clusters, count / len(ues))
                for clusters, count in ranked
            )
        return TrajectoryModel(hours, profiles, shares)


def fit(
    trace: Trace,
    theta_f: float = DEFAULT_THETA_F,
    theta_n: int = DEFAULT_THETA_N,
    **options: object,
) -> TrafficModel:
    """Fit a TrafficModel with a one-off ModelFitter."""
    fitter = ModelFitter(theta_f, theta_n, **options)  # type: ignore[arg-type]
    return fitter.fit(trace)
