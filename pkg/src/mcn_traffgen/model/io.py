# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Reading and writing model files.

Model files are YAML documents. Floats are written in their shortest
round-tripping form, so a saved model loads back with identical parameters.
Event labels follow the vocabulary of the model's generation.
"""

import logging
from typing import IO, Any

import yaml
from pydantic import ValidationError

from mcn_traffgen.constants import MODEL_FORMAT_VERSION
from mcn_traffgen.errors import FormatVersionMismatch, SchemaViolation, UnknownEventType
from mcn_traffgen.model.cdf import EmpiricalCdf
from mcn_traffgen.model.models import (
    BaselineEntry,
    BaselineModel,
    Edge,
    FirstEventModel,
    ModelEntry,
    ModelKey,
    TrafficModel,
    TrajectoryModel,
    TrajectoryProfile,
    TransitionModel,
)
from mcn_traffgen.model.schema import (
    BaselineKeyDocument,
    FirstEventDocument,
    KeyDocument,
    ModelDocument,
    check_model,
)
from mcn_traffgen.trace.models import (
    DeviceType,
    EventType,
    Generation,
    event_label,
    parse_event_label,
)

logger = logging.getLogger(__name__)

_Dumper = getattr(yaml, "CSafeDumper", yaml.SafeDumper)
_Loader = getattr(yaml, "CSafeLoader", yaml.SafeLoader)


def _points(cdf: EmpiricalCdf | None) -> list[list[float]] | None:
    if cdf is None:
        return None
    return [[value, prob] for value, prob in cdf.points()]


def _first_event_data(model: FirstEventModel, generation: Generation) -> dict[str, Any]:
    return {
        "probs": {event_label(ev, generation): p for ev, p in model.probs.items()},
        "silent": model.silent,
        "start_offset": _points(model.start_offset),
    }


def model_to_data(model: TrafficModel) -> dict[str, Any]:
    """Convert a model to plain data in file layout."""
    gen = model.generation
    keys = []
    for key, entry in model.entries.items():
        keys.append(
            {
                "device": key.device.value,
                "hour": key.hour,
                "cluster": key.cluster,
                "transitions": [
                    {
                        "state": state,
                        "edges": [
                            {
                                "event": event_label(edge.event, gen),
                                "target": edge.target,
                                "prob": edge.prob,
                                "count": edge.count,
                                "sojourn": _points(edge.sojourn),
                            }
                            for edge in edges
                        ],
                    }
                    for state, edges in entry.transitions.edges.items()
                ],
                "first_event": _first_event_data(entry.first_event, gen),
            }
        )

    data: dict[str, Any] = {
        "version": model.version,
        "generation": gen.value,
        "hours": list(model.trajectories.hours),
        "keys": keys,
        "weights": [
            {"device": device.value, "hour": hour, "clusters": dict(clusters)}
            for (device, hour), clusters in model.weights.items()
        ],
        "trajectories": [
            {
                "device": device.value,
                "share": model.trajectories.shares.get(device, 0.0),
                "profiles": [
                    {"clusters": list(profile.clusters), "weight": profile.weight}
                    for profile in profiles
                ],
            }
            for device, profiles in model.trajectories.profiles.items()
        ],
    }

    if model.baseline is not None:
        data["baseline"] = [
            {
                "device": key.device.value,
                "hour": key.hour,
                "cluster": key.cluster,
                "exit_rates": dict(entry.exit_rates),
                "exit_events": {
                    state: {event_label(ev, gen): p for ev, p in events.items()}
                    for state, events in entry.exit_events.items()
                },
                "ho_rate": entry.ho_rate,
                "tau_rate": entry.tau_rate,
                "first_event": _first_event_data(entry.first_event, gen),
                "mobility_first_event": _first_event_data(
                    entry.mobility_first_event, gen
                ),
            }
            for key, entry in model.baseline.entries.items()
        ]
    return data


def save_model(model: TrafficModel, sink: IO[str]) -> None:
    """Write a model file."""
    yaml.dump(
        model_to_data(model),
        sink,
        Dumper=_Dumper,
        sort_keys=False,
        allow_unicode=True,
    )


class _Reader:
    """Converts a validated document into a model, tracking the path."""

    def __init__(self, generation: Generation) -> None:
        self.generation = generation

    def event(self, token: str, path: str) -> EventType:
        # 5G files may still carry LTE labels; TAU is then caught by check_model
        vocabulary = Generation.LTE if self.generation is Generation.LTE else None
        try:
            return parse_event_label(token, vocabulary)
        except UnknownEventType:
            raise SchemaViolation(path, f"unknown event '{token}'") from None

    @staticmethod
    def device(token: str, path: str) -> DeviceType:
        try:
            return DeviceType(token)
        except ValueError:
            raise SchemaViolation(path, f"unknown device type '{token}'") from None

    @staticmethod
    def cdf(points: list[tuple[float, float]], path: str) -> EmpiricalCdf:
        try:
            return EmpiricalCdf.from_points(points)
        except ValueError as e:
            raise SchemaViolation(path, str(e)) from None

    def first_event(self, doc: FirstEventDocument, path: str) -> FirstEventModel:
        probs = {self.event(tok, f"{path}.probs"): p for tok, p in doc.probs.items()}
        offset = None
        if doc.start_offset:
            offset = self.cdf(doc.start_offset, f"{path}.start_offset")
        try:
            return FirstEventModel(probs, doc.silent, offset)
        except ValueError as e:
            raise SchemaViolation(path, str(e)) from None

    def key(self, doc: KeyDocument | BaselineKeyDocument, path: str) -> ModelKey:
        device = self.device(doc.device, f"{path}.device")
        return ModelKey(device, doc.hour, doc.cluster)

    def entry(self, doc: KeyDocument, path: str) -> ModelEntry:
        edges: dict[str, tuple[Edge, ...]] = {}
        for s_idx, state in enumerate(doc.transitions):
            state_path = f"{path}.transitions[{s_idx}]"
            state_edges = []
            for e_idx, edge in enumerate(state.edges):
                edge_path = f"{state_path}.edges[{e_idx}]"
                state_edges.append(
                    Edge(
                        event=self.event(edge.event, f"{edge_path}.event"),
                        target=edge.target,
                        prob=edge.prob,
                        sojourn=self.cdf(edge.sojourn, f"{edge_path}.sojourn"),
                        count=edge.count,
                    )
                )
            edges[state.state] = tuple(state_edges)
        first_event = self.first_event(doc.first_event, f"{path}.first_event")
        return ModelEntry(TransitionModel(edges), first_event)

    def baseline(self, doc: BaselineKeyDocument, path: str) -> BaselineEntry:
        return BaselineEntry(
            exit_rates=dict(doc.exit_rates),
            exit_events={
                state: {
                    self.event(tok, f"{path}.exit_events.{state}"): p
                    for tok, p in events.items()
                }
                for state, events in doc.exit_events.items()
            },
            ho_rate=doc.ho_rate,
            tau_rate=doc.tau_rate,
            first_event=self.first_event(doc.first_event, f"{path}.first_event"),
            mobility_first_event=self.first_event(
                doc.mobility_first_event, f"{path}.mobility_first_event"
            ),
        )


def model_from_data(data: Any, check: bool = True) -> TrafficModel:
    """Build a model from plain data in file layout.

    With ``check`` the first consistency violation raises SchemaViolation.
    """
    if not isinstance(data, dict):
        raise SchemaViolation("<root>", "model file must be a mapping")
    version = data.get("version")
    if version != MODEL_FORMAT_VERSION:
        raise FormatVersionMismatch(version, MODEL_FORMAT_VERSION)

    try:
        doc = ModelDocument(**data)
    except ValidationError as e:
        error = e.errors()[0]
        path = ".".join(str(loc) for loc in error["loc"]) or "<root>"
        raise SchemaViolation(path, error["msg"]) from e

    reader = _Reader(doc.generation)
    entries: dict[ModelKey, ModelEntry] = {}
    for idx, key_doc in enumerate(doc.keys):
        path = f"keys[{idx}]"
        key = reader.key(key_doc, path)
        if key in entries:
            raise SchemaViolation(path, f"duplicate key {tuple(key)}")
        entries[key] = reader.entry(key_doc, path)

    weights = {
        (reader.device(w.device, f"weights[{idx}].device"), w.hour): dict(w.clusters)
        for idx, w in enumerate(doc.weights)
    }
    profiles = {
        reader.device(t.device, f"trajectories[{idx}].device"): tuple(
            TrajectoryProfile(tuple(p.clusters), p.weight) for p in t.profiles
        )
        for idx, t in enumerate(doc.trajectories)
    }

    shares = {
        reader.device(t.device, f"trajectories[{idx}].device"): t.share
        for idx, t in enumerate(doc.trajectories)
    }

    baseline = None
    if doc.baseline is not None:
        baseline = BaselineModel(
            {
                reader.key(b, f"baseline[{idx}]"): reader.baseline(
                    b, f"baseline[{idx}]"
                )
                for idx, b in enumerate(doc.baseline)
            }
        )

    model = TrafficModel(
        generation=doc.generation,
        entries=entries,
        weights=weights,
        trajectories=TrajectoryModel(tuple(doc.hours), profiles, shares),
        baseline=baseline,
        version=doc.version,
    )
    if check:
        violations = check_model(model)
        if violations:
            raise SchemaViolation(violations[0].path, violations[0].rule)
    return model


def load_model(source: IO[str], check: bool = True) -> TrafficModel:
    """Read a model file."""
    try:
        data = yaml.load(source, Loader=_Loader)
    except yaml.YAMLError as e:
        raise SchemaViolation("<root>", f"invalid YAML: {e}") from e
    model = model_from_data(data, check)
    logger.debug(
        f"Loaded {model.generation.value} model with {len(model.entries)} keys"
    )
    return model
