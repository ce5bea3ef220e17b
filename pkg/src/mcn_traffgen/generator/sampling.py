# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Random draws used by the generators."""

import math
from bisect import bisect_right
from itertools import accumulate
from typing import Sequence

import numpy as np

from mcn_traffgen.constants import MS_PER_SECOND
from mcn_traffgen.model.cdf import EmpiricalCdf
from mcn_traffgen.model.models import FirstEventModel
from mcn_traffgen.trace.models import EventType

UNIFORM_BATCH = 64


def sample_from_cdf(cdf: EmpiricalCdf, u: float) -> float:
    """Draw a duration in seconds by inverse-transform sampling."""
    return cdf.quantile(u)


def cumulative(weights: Sequence[float]) -> tuple[float, ...]:
    """Get the running sums of weights, normalized to end at 1."""
    sums = list(accumulate(weights))
    total = sums[-1] if sums else 0.0
    if total <= 0.0:
        raise ValueError("Weights must have a positive sum")
    return tuple(s / total for s in sums)


def pick(cum: Sequence[float], u: float) -> int:
    """Get the index selected by a uniform draw over cumulative weights."""
    return min(bisect_right(cum, u), len(cum) - 1)


class UeRandom:
    """Deterministic uniform stream of one UE.

    The stream depends only on ``(seed, ue_index)``, so a UE draws the same
    values whichever worker generates it.
    """

    def __init__(self, seed: int, ue_index: int, stream: int = 0) -> None:
        self._rng = np.random.default_rng([seed, ue_index, stream])
        self._buffer: list[float] = []
        self._pos = 0

    def uniform(self) -> float:
        """Draw a uniform value in [0, 1)."""
        if self._pos >= len(self._buffer):
            self._buffer = self._rng.random(UNIFORM_BATCH).tolist()
            self._pos = 0
        value = self._buffer[self._pos]
        self._pos += 1
        return value

    def exponential(self, rate: float) -> float:
        """Draw an exponential duration in seconds."""
        return -math.log1p(-self.uniform()) / rate


class FirstEventTables:
    """Draws the event opening a UE's hour from a first-event model."""

    def __init__(self, model: FirstEventModel) -> None:
        first = [(ev, p) for ev, p in model.probs.items() if p > 0.0]
        self.cum = cumulative([p for _, p in first] + [model.silent])
        # None stands for the silent atom
        self.events: tuple[EventType | None, ...] = (
            *(ev for ev, _ in first),
            None,
        )
        self.start_offset = model.start_offset

    def draw(self, rand: UeRandom, t0: int, t1: int) -> tuple[int, EventType] | None:
        """Draw (timestamp ms, event) within [t0, t1), or None for a silent hour."""
        event = self.events[pick(self.cum, rand.uniform())]
        if event is None or self.start_offset is None:
            return None
        offset_s = sample_from_cdf(self.start_offset, rand.uniform())
        return min(t0 + round(offset_s * MS_PER_SECOND), t1 - 1), event
