# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Variance-time analysis of event streams.

The timeline is cut into fixed bins; for a window of M seconds the mean
count per bin is computed in every window, and the variance of those means
across windows is normalized by the square of their mean. A Poisson stream
decays as 1/M; bursty streams decay slower.
"""

import csv
import logging
from dataclasses import dataclass
from enum import Enum
from typing import IO, Iterable, Sequence

import numpy as np

from mcn_traffgen.constants import DEFAULT_VT_SCALES, MS_PER_SECOND
from mcn_traffgen.errors import DegenerateStream, StreamTooShort

logger = logging.getLogger(__name__)

VT_COLUMNS = ("scale_s", "norm_var", "source")
DEFAULT_BIN_MS = 100


class VtSource(str, Enum):
    """Stream a variance-time curve was computed on."""

    OBSERVED = "observed"
    POISSON = "poisson"


@dataclass(frozen=True)
class VtPoint:
    """Normalized variance of window means at one window size."""

    scale_s: float
    norm_var: float


def bin_counts(
    timestamps_ms: Iterable[int], bin_ms: int = DEFAULT_BIN_MS
) -> np.ndarray:
    """Count events per bin, from the bin of the first event to that of the last."""
    ts = np.asarray(list(timestamps_ms), dtype=np.int64)
    if ts.size == 0:
        raise DegenerateStream("Event stream is empty")
    return np.bincount((ts - ts.min()) // bin_ms)


def variance_time_of_counts(
    counts: np.ndarray, scales: Sequence[float], bin_ms: int = DEFAULT_BIN_MS
) -> list[VtPoint]:
    """Compute the variance-time curve of binned counts."""
    span_ms = counts.size * bin_ms
    if span_ms < max(scales) * MS_PER_SECOND:
        raise StreamTooShort(
            f"Stream spans {span_ms / MS_PER_SECOND} s, shorter than the "
            f"{max(scales)} s window"
        )

    points = []
    for scale in scales:
        per_window = int(round(scale * MS_PER_SECOND / bin_ms))
        if per_window < 1:
            raise ValueError(f"Window of {scale} s is shorter than a {bin_ms} ms bin")
        windows = counts.size // per_window
        means = counts[: windows * per_window].reshape(windows, per_window).mean(axis=1)
        grand_mean = means.mean()
        if grand_mean == 0:
            raise DegenerateStream(f"No events fall in any {scale} s window")
        points.append(VtPoint(float(scale), float(means.var() / grand_mean**2)))
    return points


def variance_time(
    timestamps_ms: Iterable[int],
    scales: Sequence[float] = DEFAULT_VT_SCALES,
    bin_ms: int = DEFAULT_BIN_MS,
) -> list[VtPoint]:
    """Compute the variance-time curve of an event stream."""
    return variance_time_of_counts(bin_counts(timestamps_ms, bin_ms), scales, bin_ms)


def poisson_companion(
    timestamps_ms: Iterable[int], bin_ms: int = DEFAULT_BIN_MS, seed: int = 0
) -> np.ndarray:
    """Get the binned counts of a Poisson stream fitted to an event stream.

    The rate is the maximum-likelihood rate of the observed stream over its
    span; the companion covers the same number of bins.
    """
    counts = bin_counts(timestamps_ms, bin_ms)
    rate_per_bin = counts.sum() / counts.size
    rng = np.random.default_rng(seed)
    return rng.poisson(rate_per_bin, size=counts.size)


def variance_time_report(
    timestamps_ms: Iterable[int],
    scales: Sequence[float] = DEFAULT_VT_SCALES,
    bin_ms: int = DEFAULT_BIN_MS,
    seed: int = 0,
) -> dict[VtSource, list[VtPoint]]:
    """Compute the observed curve and its fitted-Poisson companion."""
    ts = list(timestamps_ms)
    observed = variance_time_of_counts(bin_counts(ts, bin_ms), scales, bin_ms)
    companion = poisson_companion(ts, bin_ms, seed)
    poisson = variance_time_of_counts(companion, scales, bin_ms)
    logger.debug(f"Variance-time over {len(ts)} events at {len(scales)} scales")
    return {VtSource.OBSERVED: observed, VtSource.POISSON: poisson}


def write_variance_time(
    report: dict[VtSource, list[VtPoint]], stream: IO[str]
) -> None:
    """Write variance-time curves as CSV."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(VT_COLUMNS)
    for source, points in report.items():
        for point in points:
            writer.writerow(
                (repr(point.scale_s), repr(point.norm_var), source.value)
            )
