# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Kolmogorov-Smirnov and Anderson-Darling goodness-of-fit tests."""

import logging
import math
import threading
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np
from scipy import special

from mcn_traffgen.distfit.mle import mle_exponential
from mcn_traffgen.errors import EmptySample

logger = logging.getLogger(__name__)

AD_MIN_SAMPLES = 5
AD_DEFAULT_REPLICATES = 10_000
AD_CHUNK_ROWS = 1_000

_critical_cache: dict[tuple[int, float, int, int], float] = {}
_critical_lock = threading.Lock()


@dataclass(frozen=True)
class TestResult:
    """Outcome of a goodness-of-fit test at a significance level.

    K-S results carry a p-value, A² results a bootstrap critical value.
    """

    __test__ = False

    test: str
    statistic: float
    alpha: float
    passed: bool
    p_value: float | None = None
    critical: float | None = None


def ks_statistic(
    samples: Iterable[float], reference_cdf: Callable[[np.ndarray], np.ndarray]
) -> float:
    """Get the sup distance between a sample's ECDF and a reference CDF."""
    data = np.sort(np.asarray(list(samples), dtype=float))
    n = data.size
    if n == 0:
        raise EmptySample("K-S test needs at least one sample")
    ref = np.asarray(reference_cdf(data), dtype=float)
    ranks = np.arange(1, n + 1)
    d_plus = np.max(ranks / n - ref)
    d_minus = np.max(ref - (ranks - 1) / n)
    return float(max(d_plus, d_minus, 0.0))


def ks_test(
    samples: Iterable[float],
    reference_cdf: Callable[[np.ndarray], np.ndarray],
    alpha: float = 0.05,
) -> TestResult:
    """One-sample K-S test with the asymptotic Kolmogorov p-value.

    Parameters estimated from the same sample are not corrected for, so the
    test is conservative in that case.
    """
    data = list(samples)
    statistic = ks_statistic(data, reference_cdf)
    p_value = float(special.kolmogorov(math.sqrt(len(data)) * statistic))
    return TestResult("KS", statistic, alpha, p_value > alpha, p_value=p_value)


def ks_two_sample(a: Iterable[float], b: Iterable[float]) -> float:
    """Get the largest vertical gap between the ECDFs of two samples."""
    xa = np.sort(np.asarray(list(a), dtype=float))
    xb = np.sort(np.asarray(list(b), dtype=float))
    if xa.size == 0 or xb.size == 0:
        raise EmptySample("Two-sample K-S needs two non-empty samples")
    pooled = np.concatenate((xa, xb))
    cdf_a = np.searchsorted(xa, pooled, side="right") / xa.size
    cdf_b = np.searchsorted(xb, pooled, side="right") / xb.size
    return float(np.max(np.abs(cdf_a - cdf_b)))


def _a_squared(scaled: np.ndarray) -> np.ndarray:
    """A² of rows of rate-normalized samples against Exp(1).

    ``scaled`` holds x·λ̂ per row, already sorted along the last axis.
    """
    n = scaled.shape[-1]
    log_cdf = np.log(-np.expm1(-scaled))
    log_sf = -scaled[..., ::-1]
    weights = 2.0 * np.arange(1, n + 1) - 1.0
    return -n - np.sum(weights * (log_cdf + log_sf), axis=-1) / n


def ad_statistic(samples: Iterable[float]) -> float:
    """Get A² of a sample against the exponential law fitted to it."""
    data = np.sort(np.asarray(list(samples), dtype=float))
    rate = mle_exponential(data).rate
    return float(_a_squared(data * rate))


def ad_bucket(n: int) -> int:
    """Get the sample size whose bootstrap calibrates a test of size n."""
    if n <= 64:
        return n
    return int(2 ** round(math.log2(n)))


def ad_critical_value(
    n: int,
    alpha: float = 0.05,
    replicates: int = AD_DEFAULT_REPLICATES,
    seed: int = 0,
) -> float:
    """Get the bootstrap critical value of A² with an estimated rate.

    A² with a fitted rate does not depend on the true rate, so unit-rate
    replicates calibrate every sample of the same size. Values are cached
    per size bucket.
    """
    bucket = ad_bucket(n)
    key = (bucket, alpha, replicates, seed)
    with _critical_lock:
        if key in _critical_cache:
            return _critical_cache[key]

    rng = np.random.default_rng([seed, bucket])
    values = []
    remaining = replicates
    while remaining:
        rows = min(remaining, AD_CHUNK_ROWS)
        draws = np.sort(rng.exponential(size=(rows, bucket)), axis=1)
        scaled = draws / draws.mean(axis=1, keepdims=True)
        values.append(_a_squared(scaled))
        remaining -= rows
    critical = float(np.quantile(np.concatenate(values), 1.0 - alpha))
    logger.debug(f"A² critical value for n={bucket}, alpha={alpha}: {critical:.4f}")

    with _critical_lock:
        return _critical_cache.setdefault(key, critical)


def ad_test_exponential(
    samples: Iterable[float],
    alpha: float = 0.05,
    replicates: int = AD_DEFAULT_REPLICATES,
    seed: int = 0,
) -> TestResult:
    """Anderson-Darling test of exponentiality with an estimated rate."""
    data = list(samples)
    if len(data) < AD_MIN_SAMPLES:
        raise EmptySample(
            f"A² test needs at least {AD_MIN_SAMPLES} samples, got {len(data)}"
        )
    statistic = ad_statistic(data)
    critical = ad_critical_value(len(data), alpha, replicates, seed)
    return TestResult("AD", statistic, alpha, statistic < critical, critical=critical)
