# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Empirical distribution functions."""

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from mcn_traffgen.constants import DEFAULT_CDF_MAX_POINTS


@dataclass(frozen=True)
class EmpiricalCdf:
    """Nonparametric CDF stored as (value, cumulative probability) points.

    Values are strictly increasing, probabilities strictly increasing and
    the last one is exactly 1.
    """

    values: tuple[float, ...]
    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.values:
            raise ValueError("An empirical CDF needs at least one point")
        if len(self.values) != len(self.probs):
            raise ValueError("Values and probabilities differ in length")
        for prev, nxt in zip(self.values, self.values[1:]):
            if not nxt > prev:
                raise ValueError("CDF values must be strictly increasing")
        for prev, nxt in zip(self.probs, self.probs[1:]):
            if not nxt > prev:
                raise ValueError("CDF probabilities must be strictly increasing")
        if not self.probs[0] > 0.0:
            raise ValueError("CDF probabilities must be positive")
        if self.probs[-1] != 1.0:
            raise ValueError("CDF must end at probability 1")

    @classmethod
    def from_samples(
        cls, samples: Iterable[float], max_points: int = DEFAULT_CDF_MAX_POINTS
    ) -> "EmpiricalCdf":
        """Build the CDF of a sample.

        Samples with more than ``max_points`` distinct values are compressed
        to ``max_points`` equally spaced quantiles.
        """
        data = np.asarray(list(samples), dtype=float)
        if data.size == 0:
            raise ValueError("Cannot build a CDF from an empty sample")

        values, counts = np.unique(data, return_counts=True)
        if len(values) <= max_points:
            probs = np.cumsum(counts) / data.size
        else:
            probs = np.arange(1, max_points + 1) / max_points
            values = np.quantile(data, probs, method="inverted_cdf")
            # Equal quantiles collapse onto their highest level
            keep = np.append(values[1:] != values[:-1], True)
            values, probs = values[keep], probs[keep]
        probs[-1] = 1.0
        return cls(tuple(float(v) for v in values), tuple(float(p) for p in probs))

    @classmethod
    def from_points(cls, points: Sequence[Sequence[float]]) -> "EmpiricalCdf":
        """Build a CDF from (value, probability) pairs."""
        return cls(
            tuple(float(value) for value, _ in points),
            tuple(float(prob) for _, prob in points),
        )

    def points(self) -> list[tuple[float, float]]:
        """Get the stored (value, probability) pairs."""
        return list(zip(self.values, self.probs))

    def __len__(self) -> int:
        return len(self.values)

    def __call__(self, x: float) -> float:
        """Evaluate the step CDF at a value."""
        idx = bisect_right(self.values, x)
        return self.probs[idx - 1] if idx else 0.0

    def quantile(self, u: float) -> float:
        """Invert the CDF with linear interpolation between stored points.

        Probabilities up to the first point map to the first value.
        """
        probs = self.probs
        if u <= probs[0]:
            return self.values[0]
        if u >= 1.0:
            return self.values[-1]
        idx = bisect_left(probs, u)
        p0, p1 = probs[idx - 1], probs[idx]
        v0, v1 = self.values[idx - 1], self.values[idx]
        return v0 + (u - p0) / (p1 - p0) * (v1 - v0)

    def mean(self) -> float:
        """Get the mean of the step distribution."""
        masses = np.diff(np.concatenate(([0.0], self.probs)))
        return float(np.dot(masses, self.values))

    def scaled(self, factor: float) -> "EmpiricalCdf":
        """Divide every value by a positive factor."""
        if factor <= 0:
            raise ValueError("Scaling factor must be positive")
        return EmpiricalCdf(tuple(v / factor for v in self.values), self.probs)

    def sup_distance(self, other: "EmpiricalCdf") -> float:
        """Get the largest vertical gap between two step CDFs."""
        pooled = sorted(set(self.values) | set(other.values))
        return max(abs(self(x) - other(x)) for x in pooled)
