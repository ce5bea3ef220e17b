# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Comparison of per-UE metric distributions between two traces."""

import csv
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import IO

from mcn_traffgen.distfit.gof import ks_two_sample
from mcn_traffgen.errors import InsufficientData
from mcn_traffgen.machine.replay import BootstrapPolicy, replay
from mcn_traffgen.model.cdf import EmpiricalCdf
from mcn_traffgen.trace.models import DeviceType, EventType, Generation, Trace

CDF_COLUMNS = ("value", "cum_prob", "source")
DEFAULT_ACTIVE_THRESHOLD = 2


class CompareMetric(str, Enum):
    """Per-UE metric compared between traces."""

    COUNT = "count"
    SOJOURN = "sojourn"


@dataclass(frozen=True)
class CompareResult:
    """Max y-distance between two metric distributions and their CDFs.

    With a split, ``inactive``/``active`` hold the distances over UEs with
    at most / more than the threshold number of events; None when either
    trace has no UE on that side.
    """

    distance: float
    real: EmpiricalCdf
    synth: EmpiricalCdf
    inactive: float | None = None
    active: float | None = None


def _metric_samples(
    trace: Trace,
    metric: CompareMetric,
    event_type: EventType | None,
    state: str | None,
    device: DeviceType | None,
    bootstrap: BootstrapPolicy,
    generation: Generation,
) -> list[tuple[int, float]]:
    """Get (activity, value) pairs; activity is the UE's count of the event type."""
    ues = trace.ues_of(device) if device is not None else sorted(trace.events)
    pairs: list[tuple[int, float]] = []
    for ue_id in ues:
        events = trace.events[ue_id]
        counts = Counter(ev.event_type for ev in events)
        activity = counts[event_type] if event_type is not None else len(events)
        if metric is CompareMetric.COUNT:
            pairs.append((activity, float(activity)))
            continue
        for sample in replay(events, bootstrap, generation).samples:
            if sample.source == state and not sample.censored:
                pairs.append((activity, sample.duration_s))
    return pairs


def _distance(a: list[float], b: list[float]) -> float | None:
    return ks_two_sample(a, b) if a and b else None


def cdf_compare(
    real: Trace,
    synth: Trace,
    metric: CompareMetric = CompareMetric.COUNT,
    event_type: EventType | None = None,
    state: str | None = None,
    device: DeviceType | None = None,
    split: bool = False,
    active_threshold: int = DEFAULT_ACTIVE_THRESHOLD,
    bootstrap: BootstrapPolicy = BootstrapPolicy.INFER_FROM_FIRST_EVENT,
    generation: Generation = Generation.LTE,
) -> CompareResult:
    """Compare a metric's distribution in a real and a synthetic trace.

    Counts are per UE over the whole trace; sojourns pool every completed
    sojourn in ``state``. The split separates UEs by their count of
    ``event_type`` (all events without one).
    """
    if metric is CompareMetric.COUNT and event_type is None:
        raise ValueError("The count metric needs an event type")
    if metric is CompareMetric.SOJOURN and state is None:
        raise ValueError("The sojourn metric needs a state")

    options = (metric, event_type, state, device, bootstrap, generation)
    real_pairs = _metric_samples(real, *options)
    synth_pairs = _metric_samples(synth, *options)
    real_values = [value for _, value in real_pairs]
    synth_values = [value for _, value in synth_pairs]
    if not real_values or not synth_values:
        raise InsufficientData("Both traces need at least one value of the metric")

    inactive = active = None
    if split:

        def side(pairs: list[tuple[int, float]], is_active: bool) -> list[float]:
            return [v for a, v in pairs if (a > active_threshold) == is_active]

        inactive = _distance(side(real_pairs, False), side(synth_pairs, False))
        active = _distance(side(real_pairs, True), side(synth_pairs, True))

    return CompareResult(
        distance=ks_two_sample(real_values, synth_values),
        real=EmpiricalCdf.from_samples(real_values),
        synth=EmpiricalCdf.from_samples(synth_values),
        inactive=inactive,
        active=active,
    )


def write_cdf_points(result: CompareResult, stream: IO[str]) -> None:
    """Write both CDFs as CSV."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CDF_COLUMNS)
    for source, cdf in (("real", result.real), ("synth", result.synth)):
        for value, prob in cdf.points():
            writer.writerow((repr(value), repr(prob), source))
