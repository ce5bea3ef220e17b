# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Conversion of LTE models to the 5G machine.

The 5G machine has no TAU: its states and edges are removed and the
surviving probabilities renormalized. Frequency factors then rescale the
odds of the edges labeled with each event.
"""

import csv
import logging
from dataclasses import dataclass, field, replace
from typing import IO

from mcn_traffgen.errors import AlreadyFiveG, SchemaViolation, UnknownEventType
from mcn_traffgen.machine.states import TAU_SUBS
from mcn_traffgen.model.models import (
    BaselineEntry,
    BaselineModel,
    Edge,
    FirstEventModel,
    ModelEntry,
    ModelKey,
    TrafficModel,
    TransitionModel,
)
from mcn_traffgen.model.schema import ModelViolation, check_model
from mcn_traffgen.trace.models import EventType, Generation, parse_event_label

logger = logging.getLogger(__name__)

SCALING_COLUMNS = ("event", "factor")
DEFAULT_HO_FACTOR = 4.6

TAU_STATE_NAMES = frozenset(sub.value for sub in TAU_SUBS)


@dataclass(frozen=True)
class ScalingFactors:
    """Multiplicative frequency factor per event type; 1.0 when absent."""

    factors: dict[EventType, float] = field(
        default_factory=lambda: {EventType.HO: DEFAULT_HO_FACTOR}
    )

    def __post_init__(self) -> None:
        for event, factor in self.factors.items():
            if not factor > 0:
                raise ValueError(f"Factor of {event.value} must be positive")

    def factor(self, event: EventType) -> float:
        """Get the factor of an event type."""
        return self.factors.get(event, 1.0)

    @classmethod
    def identity(cls) -> "ScalingFactors":
        """Get factors that leave every edge unchanged."""
        return cls({})


def load_scaling_factors(stream: IO[str]) -> ScalingFactors:
    """Read ``event,factor`` records; HO keeps its default unless listed."""
    factors = dict(ScalingFactors().factors)
    for line_no, row in enumerate(csv.reader(stream), start=1):
        if not row or (line_no == 1 and tuple(row) == SCALING_COLUMNS):
            continue
        path = f"line {line_no}"
        if len(row) != 2:
            raise SchemaViolation(path, f"expected 2 fields, found {len(row)}")
        try:
            event = parse_event_label(row[0].strip())
        except UnknownEventType:
            raise SchemaViolation(path, f"unknown event '{row[0]}'") from None
        try:
            factor = float(row[1])
        except ValueError:
            raise SchemaViolation(path, f"factor '{row[1]}' is not a number") from None
        if not factor > 0:
            raise SchemaViolation(path, f"factor must be positive, got {factor}")
        factors[event] = factor
    return ScalingFactors(factors)


def _renormalized(edges: list[Edge]) -> tuple[Edge, ...]:
    total = sum(edge.prob for edge in edges)
    return tuple(replace(edge, prob=edge.prob / total) for edge in edges)


def remove_tau(transitions: TransitionModel) -> TransitionModel:
    """Drop TAU states and every edge touching them, then renormalize.

    States left without edges are dropped.
    """
    edges: dict[str, tuple[Edge, ...]] = {}
    for state, out in transitions.edges.items():
        if state in TAU_STATE_NAMES:
            continue
        kept = [
            edge
            for edge in out
            if edge.event is not EventType.TAU and edge.target not in TAU_STATE_NAMES
        ]
        if kept and sum(edge.prob for edge in kept) > 0:
            edges[state] = _renormalized(kept)
    return TransitionModel(edges)


def scale_odds(
    edges: tuple[Edge, ...], factors: ScalingFactors, scale_sojourn: bool = False
) -> tuple[Edge, ...]:
    """Multiply the odds of each edge by its event's factor and renormalize.

    For an edge of probability p among others, the new probability is
    p·f / (p·f + 1 - p). With ``scale_sojourn`` the durations of edges
    whose factor is not 1 are divided by it.
    """
    if scale_sojourn:
        edges = tuple(
            replace(edge, sojourn=edge.sojourn.scaled(factors.factor(edge.event)))
            if factors.factor(edge.event) != 1.0
            else edge
            for edge in edges
        )
    if len(edges) < 2:
        return edges
    weighted = [
        replace(edge, prob=edge.prob * factors.factor(edge.event)) for edge in edges
    ]
    return _renormalized(weighted)


def _without_tau(model: FirstEventModel) -> FirstEventModel:
    if EventType.TAU not in model.probs:
        return model
    probs = {ev: p for ev, p in model.probs.items() if ev is not EventType.TAU}
    total = sum(probs.values()) + model.silent
    if not any(p > 0 for p in probs.values()) or total <= 0:
        return FirstEventModel.silent_only()
    rescaled = {ev: p / total for ev, p in probs.items()}
    return FirstEventModel(rescaled, model.silent / total, model.start_offset)


def _convert_baseline(
    baseline: BaselineModel, factors: ScalingFactors
) -> BaselineModel:
    return BaselineModel(
        {
            key: BaselineEntry(
                exit_rates=entry.exit_rates,
                exit_events=entry.exit_events,
                ho_rate=entry.ho_rate * factors.factor(EventType.HO),
                tau_rate=0.0,
                first_event=_without_tau(entry.first_event),
                mobility_first_event=_without_tau(entry.mobility_first_event),
            )
            for key, entry in baseline.entries.items()
        }
    )


def convert_model_to_5g(
    model: TrafficModel,
    factors: ScalingFactors | None = None,
    scale_sojourn: bool = False,
) -> TrafficModel:
    """Convert an LTE model to the 5G machine."""
    if model.generation is Generation.FIVE_G:
        raise AlreadyFiveG()
    factors = factors if factors is not None else ScalingFactors()

    entries: dict[ModelKey, ModelEntry] = {}
    removed = 0
    for key, entry in model.entries.items():
        kept = remove_tau(entry.transitions)
        removed += entry.transitions.edge_count() - kept.edge_count()
        scaled = TransitionModel(
            {
                state: scale_odds(edges, factors, scale_sojourn)
                for state, edges in kept.edges.items()
            }
        )
        entries[key] = ModelEntry(scaled, _without_tau(entry.first_event))
    logger.info(f"Removed {removed} TAU edges from {len(entries)} keys")

    baseline = None
    if model.baseline is not None:
        baseline = _convert_baseline(model.baseline, factors)

    return TrafficModel(
        generation=Generation.FIVE_G,
        entries=entries,
        weights=model.weights,
        trajectories=model.trajectories,
        baseline=baseline,
        version=model.version,
    )


def validate_5g_model(model: TrafficModel) -> list[ModelViolation]:
    """List the rules a 5G model breaks; empty when it is consistent and TAU-free."""
    if model.generation is not Generation.FIVE_G:
        return [ModelViolation("generation", "model is not a FIVE_G model")]
    return check_model(model)
