# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Per-UE traffic features used for clustering."""

from dataclasses import astuple, dataclass
from typing import Iterable, Sequence

import numpy as np

from mcn_traffgen.machine.replay import SojournSample
from mcn_traffgen.machine.states import Level, TopState
from mcn_traffgen.trace.models import ControlEvent, EventType

FEATURE_NAMES = ("n_srv_req", "n_s1_rel", "sd_connected_s", "sd_idle_s")


@dataclass(frozen=True, slots=True)
class FeatureVector:
    """Traffic features of one UE in one hour-of-day.

    Counts are in events (per-day means when pooled across days), standard
    deviations in seconds.
    """

    n_srv_req: float = 0.0
    n_s1_rel: float = 0.0
    sd_connected_s: float = 0.0
    sd_idle_s: float = 0.0

    def __post_init__(self) -> None:
        for name, value in zip(FEATURE_NAMES, astuple(self)):
            if value < 0:
                raise ValueError(f"Feature {name} must be non-negative, got {value}")

    def as_tuple(self) -> tuple[float, float, float, float]:
        """Get the features in FEATURE_NAMES order."""
        return (self.n_srv_req, self.n_s1_rel, self.sd_connected_s, self.sd_idle_s)


def _population_sd(durations: list[float]) -> float:
    if len(durations) < 2:
        return 0.0
    return float(np.std(durations))


def extract_features(
    events: Sequence[ControlEvent],
    samples: Iterable[SojournSample],
    days: int = 1,
) -> FeatureVector:
    """Compute the feature vector of one UE's hour.

    ``events`` and ``samples`` are those of the hour (pooled over ``days``
    days); only completed top-level CONNECTED/IDLE sojourns enter the
    standard deviations.
    """
    days = max(days, 1)
    srv_req = sum(1 for ev in events if ev.event_type is EventType.SRV_REQ)
    s1_rel = sum(1 for ev in events if ev.event_type is EventType.S1_CONN_REL)

    connected: list[float] = []
    idle: list[float] = []
    for sample in samples:
        if sample.level is not Level.TOP or sample.censored:
            continue
        if sample.source == TopState.CONNECTED.value:
            connected.append(sample.duration_s)
        elif sample.source == TopState.IDLE.value:
            idle.append(sample.duration_s)

    return FeatureVector(
        n_srv_req=srv_req / days,
        n_s1_rel=s1_rel / days,
        sd_connected_s=_population_sd(connected),
        sd_idle_s=_population_sd(idle),
    )


def feature_thresholds(
    theta_f: float, overrides: dict[str, float] | None = None
) -> tuple[float, ...]:
    """Get the per-feature range thresholds, in FEATURE_NAMES order."""
    overrides = overrides or {}
    unknown = set(overrides) - set(FEATURE_NAMES)
    if unknown:
        raise ValueError(f"Unknown feature names: {', '.join(sorted(unknown))}")
    return tuple(float(overrides.get(name, theta_f)) for name in FEATURE_NAMES)
