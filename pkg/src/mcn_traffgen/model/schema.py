# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Model file schema and model consistency checks.

The pydantic documents describe the structure of a model file; semantic
rules (probability sums, machine legality, key references) are checked on
the in-memory model by ``check_model``.
"""

from dataclasses import dataclass

from pydantic import BaseModel, Field

from mcn_traffgen.machine.states import TAU_SUBS, edge_allowed
from mcn_traffgen.model.models import PROB_TOLERANCE, ModelKey, TrafficModel
from mcn_traffgen.trace.models import EventType, Generation


class EdgeDocument(BaseModel):
    """An outgoing edge of a state."""

    model_config = {"extra": "forbid"}

    event: str
    target: str
    prob: float = Field(ge=0.0, le=1.0)
    count: int = Field(default=0, ge=0)
    sojourn: list[tuple[float, float]] = Field(min_length=1)


class StateDocument(BaseModel):
    """The edges leaving one state."""

    model_config = {"extra": "forbid"}

    state: str
    edges: list[EdgeDocument]


class FirstEventDocument(BaseModel):
    """First-event model of a key."""

    model_config = {"extra": "forbid"}

    probs: dict[str, float] = Field(default_factory=dict)
    silent: float = Field(ge=0.0, le=1.0)
    start_offset: list[tuple[float, float]] | None = None


class KeyDocument(BaseModel):
    """Parameters of one (device, hour, cluster) key."""

    model_config = {"extra": "forbid"}

    device: str
    hour: int = Field(ge=0, le=23)
    cluster: int = Field(ge=0)
    transitions: list[StateDocument] = Field(default_factory=list)
    first_event: FirstEventDocument


class WeightDocument(BaseModel):
    """Cluster weights of one (device, hour)."""

    model_config = {"extra": "forbid"}

    device: str
    hour: int = Field(ge=0, le=23)
    clusters: dict[int, float]


class ProfileDocument(BaseModel):
    """One cluster trajectory."""

    model_config = {"extra": "forbid"}

    clusters: list[int]
    weight: float = Field(gt=0.0, le=1.0)


class TrajectoryDocument(BaseModel):
    """Cluster trajectories of one device type."""

    model_config = {"extra": "forbid"}

    device: str
    share: float = Field(default=1.0, ge=0.0, le=1.0)
    profiles: list[ProfileDocument]


class BaselineKeyDocument(BaseModel):
    """Poisson baseline parameters of one key."""

    model_config = {"extra": "forbid"}

    device: str
    hour: int = Field(ge=0, le=23)
    cluster: int = Field(ge=0)
    exit_rates: dict[str, float]
    exit_events: dict[str, dict[str, float]]
    ho_rate: float = Field(ge=0.0)
    tau_rate: float = Field(ge=0.0)
    first_event: FirstEventDocument
    mobility_first_event: FirstEventDocument


class ModelDocument(BaseModel):
    """A whole model file."""

    model_config = {"extra": "forbid"}

    version: int
    generation: Generation
    hours: list[int]
    keys: list[KeyDocument]
    weights: list[WeightDocument]
    trajectories: list[TrajectoryDocument]
    baseline: list[BaselineKeyDocument] | None = None


@dataclass(frozen=True)
class ModelViolation:
    """A rule broken by a model."""

    path: str
    rule: str


def _key_path(key: ModelKey) -> str:
    return f"keys[{key.device.value},{key.hour},{key.cluster}]"


def check_model(model: TrafficModel) -> list[ModelViolation]:
    """List every consistency rule the model breaks."""
    violations: list[ModelViolation] = []
    five_g = model.generation is Generation.FIVE_G
    tau_states = {sub.value for sub in TAU_SUBS}

    for key, entry in sorted(model.entries.items()):
        base = _key_path(key)
        for state, edges in entry.transitions.edges.items():
            path = f"{base}.transitions.{state}"
            if five_g and state in tau_states:
                violations.append(ModelViolation(path, "TAU state in a 5G model"))
            total = sum(edge.prob for edge in edges)
            if edges and abs(total - 1.0) > PROB_TOLERANCE:
                violations.append(
                    ModelViolation(path, f"probabilities sum to {total!r}")
                )
            for edge in edges:
                if not edge_allowed(state, edge.event, edge.target, model.generation):
                    violations.append(
                        ModelViolation(
                            f"{path}.{edge.event.value}",
                            f"edge {state} -> {edge.target} is not allowed "
                            f"in the {model.generation.value} machine",
                        )
                    )
        if five_g and entry.first_event.probs.get(EventType.TAU, 0.0) > 0.0:
            violations.append(
                ModelViolation(f"{base}.first_event", "TAU first event in a 5G model")
            )

    for (device, hour), clusters in sorted(model.weights.items()):
        path = f"weights[{device.value},{hour}]"
        total = sum(clusters.values())
        if abs(total - 1.0) > PROB_TOLERANCE:
            violations.append(ModelViolation(path, f"weights sum to {total!r}"))
        for cluster in clusters:
            if ModelKey(device, hour, cluster) not in model.entries:
                violations.append(
                    ModelViolation(path, f"cluster {cluster} has no entry")
                )

    hours = model.trajectories.hours
    for device, profiles in sorted(model.trajectories.profiles.items()):
        path = f"trajectories[{device.value}]"
        total = sum(profile.weight for profile in profiles)
        if profiles and abs(total - 1.0) > PROB_TOLERANCE:
            violations.append(ModelViolation(path, f"weights sum to {total!r}"))
        for profile in profiles:
            if len(profile.clusters) != len(hours):
                violations.append(
                    ModelViolation(path, "profile length differs from hours")
                )
                continue
            for hour, cluster in zip(hours, profile.clusters):
                if ModelKey(device, hour, cluster) not in model.entries:
                    violations.append(
                        ModelViolation(
                            path, f"cluster {cluster} at hour {hour} has no entry"
                        )
                    )

    if model.baseline is not None:
        for key, baseline in sorted(model.baseline.entries.items()):
            path = f"baseline[{key.device.value},{key.hour},{key.cluster}]"
            for state, events in baseline.exit_events.items():
                total = sum(events.values())
                if events and abs(total - 1.0) > PROB_TOLERANCE:
                    violations.append(
                        ModelViolation(
                            f"{path}.{state}", f"probabilities sum to {total!r}"
                        )
                    )
            if five_g and baseline.tau_rate > 0.0:
                violations.append(ModelViolation(path, "TAU stream in a 5G model"))

    return violations
