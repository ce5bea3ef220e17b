# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Data models of fitted traffic models."""

from dataclasses import dataclass, field
from typing import NamedTuple

from mcn_traffgen.constants import MODEL_FORMAT_VERSION
from mcn_traffgen.errors import MissingKey
from mcn_traffgen.model.cdf import EmpiricalCdf
from mcn_traffgen.trace.models import DeviceType, EventType, Generation

PROB_TOLERANCE = 1e-9


class ModelKey(NamedTuple):
    """Identifies one fitted two-level machine."""

    device: DeviceType
    hour: int
    cluster: int


@dataclass(frozen=True)
class Edge:
    """One outgoing transition of a state."""

    event: EventType
    target: str
    prob: float
    sojourn: EmpiricalCdf
    count: int = 0


@dataclass(frozen=True)
class TransitionModel:
    """Outgoing edges per state name, for both machine levels."""

    edges: dict[str, tuple[Edge, ...]] = field(default_factory=dict)

    def outgoing(self, state: str) -> tuple[Edge, ...]:
        """Get the edges leaving a state (empty when none were observed)."""
        return self.edges.get(state, ())

    def states(self) -> list[str]:
        """Get the states with outgoing edges."""
        return list(self.edges)

    def probability(self, state: str, event: EventType) -> float:
        """Get the total probability of leaving a state via an event."""
        return sum(edge.prob for edge in self.outgoing(state) if edge.event is event)

    def edge_count(self) -> int:
        """Get the number of edges."""
        return sum(len(edges) for edges in self.edges.values())


@dataclass(frozen=True)
class FirstEventModel:
    """Which event opens a UE's hour and when, including a silent atom.

    ``start_offset`` holds offsets within the hour in seconds and is None
    when every observation was silent.
    """

    probs: dict[EventType, float]
    silent: float
    start_offset: EmpiricalCdf | None = None

    def __post_init__(self) -> None:
        total = sum(self.probs.values()) + self.silent
        if abs(total - 1.0) > PROB_TOLERANCE:
            raise ValueError(f"First-event probabilities sum to {total}")
        if any(p > 0 for p in self.probs.values()) and self.start_offset is None:
            raise ValueError("A first-event model with events needs a start-offset CDF")

    @classmethod
    def silent_only(cls) -> "FirstEventModel":
        """Get the model of a group that never emits."""
        return cls({}, 1.0, None)


@dataclass(frozen=True)
class ModelEntry:
    """Parameters fitted for one ModelKey."""

    transitions: TransitionModel
    first_event: FirstEventModel


@dataclass(frozen=True)
class TrajectoryProfile:
    """A per-hour cluster-id sequence and its share of the device's UEs."""

    clusters: tuple[int, ...]
    weight: float


@dataclass(frozen=True)
class TrajectoryModel:
    """Cluster trajectories observed for real UEs.

    Every profile holds one cluster id per hour of ``hours``; ``shares``
    hold each device type's fraction of the observed UEs.
    """

    hours: tuple[int, ...]
    profiles: dict[DeviceType, tuple[TrajectoryProfile, ...]]
    shares: dict[DeviceType, float] = field(default_factory=dict)

    def cluster_at(self, profile: TrajectoryProfile, hour: int) -> int | None:
        """Get the cluster of a profile at an hour-of-day."""
        try:
            return profile.clusters[self.hours.index(hour)]
        except ValueError:
            return None


@dataclass(frozen=True)
class BaselineEntry:
    """Poisson baseline parameters of one ModelKey.

    ``exit_rates`` are per top state in 1/s; ``exit_events`` give the
    probability of each leaving event; a zero HO or TAU rate disables
    that stream.
    """

    exit_rates: dict[str, float]
    exit_events: dict[str, dict[EventType, float]]
    ho_rate: float
    tau_rate: float
    first_event: FirstEventModel
    mobility_first_event: FirstEventModel


@dataclass(frozen=True)
class BaselineModel:
    """Poisson baseline fitted with the main model's clusters."""

    entries: dict[ModelKey, BaselineEntry]

    def entry(self, key: ModelKey) -> BaselineEntry:
        """Get the entry of a key."""
        try:
            return self.entries[key]
        except KeyError:
            raise MissingKey(key.device.value, key.hour, key.cluster) from None


@dataclass(frozen=True)
class TrafficModel:
    """Complete fitted model."""

    generation: Generation
    entries: dict[ModelKey, ModelEntry]
    weights: dict[tuple[DeviceType, int], dict[int, float]]
    trajectories: TrajectoryModel
    baseline: BaselineModel | None = None
    version: int = MODEL_FORMAT_VERSION

    def entry(self, key: ModelKey) -> ModelEntry:
        """Get the entry of a key."""
        try:
            return self.entries[key]
        except KeyError:
            raise MissingKey(key.device.value, key.hour, key.cluster) from None

    @property
    def hours(self) -> tuple[int, ...]:
        """Modeled hours-of-day."""
        return self.trajectories.hours

    def devices(self) -> list[DeviceType]:
        """Get the modeled device types, in enum order."""
        present = {key.device for key in self.entries}
        return [dev for dev in DeviceType if dev in present]

    def cluster_counts(self) -> dict[tuple[DeviceType, int], int]:
        """Get the number of clusters per (device, hour-of-day)."""
        return {
            group: len(clusters) for group, clusters in sorted(self.weights.items())
        }
