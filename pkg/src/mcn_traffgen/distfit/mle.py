# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Maximum likelihood fitting of exponential, Pareto and Weibull laws."""

import logging
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy import stats

from mcn_traffgen.constants import WEIBULL_K_MAX, WEIBULL_K_MIN
from mcn_traffgen.errors import (
    DegenerateSample,
    EmptySample,
    NoConvergence,
    NonPositiveSample,
)

logger = logging.getLogger(__name__)

NEWTON_TOLERANCE = 1e-9
NEWTON_MAX_ITERATIONS = 200


@dataclass(frozen=True)
class ExponentialParams:
    """Exponential law with rate ``rate`` (1/s)."""

    rate: float

    def __post_init__(self) -> None:
        if not self.rate > 0:
            raise ValueError("Exponential rate must be positive")

    def cdf(self, x: np.ndarray | float) -> np.ndarray:
        """Evaluate the CDF."""
        return stats.expon.cdf(x, scale=1.0 / self.rate)


@dataclass(frozen=True)
class ParetoParams:
    """Pareto law with shape ``alpha`` and scale ``x_m`` (s)."""

    alpha: float
    x_m: float

    def __post_init__(self) -> None:
        if not (self.alpha > 0 and self.x_m > 0):
            raise ValueError("Pareto shape and scale must be positive")

    def cdf(self, x: np.ndarray | float) -> np.ndarray:
        """Evaluate the CDF."""
        return stats.pareto.cdf(x, self.alpha, scale=self.x_m)


@dataclass(frozen=True)
class WeibullParams:
    """Weibull law with shape ``k`` and scale ``scale`` (s)."""

    k: float
    scale: float

    def __post_init__(self) -> None:
        if not (self.k > 0 and self.scale > 0):
            raise ValueError("Weibull shape and scale must be positive")

    def cdf(self, x: np.ndarray | float) -> np.ndarray:
        """Evaluate the CDF."""
        return stats.weibull_min.cdf(x, self.k, scale=self.scale)


def _positive(samples: Iterable[float], minimum: int) -> np.ndarray:
    data = np.asarray(list(samples), dtype=float)
    if data.size < minimum:
        raise EmptySample(f"Need at least {minimum} samples, got {data.size}")
    if np.any(data <= 0):
        raise NonPositiveSample("Samples must be strictly positive")
    return data


def mle_exponential(samples: Iterable[float]) -> ExponentialParams:
    """Fit an exponential law: the rate is the inverse sample mean."""
    data = _positive(samples, 1)
    return ExponentialParams(rate=1.0 / float(np.mean(data)))


def mle_pareto(samples: Iterable[float]) -> ParetoParams:
    """Fit a Pareto law in closed form."""
    data = _positive(samples, 2)
    x_m = float(data.min())
    log_sum = float(np.sum(np.log(data / x_m)))
    if log_sum == 0.0:
        raise DegenerateSample("All samples are equal, Pareto shape is undefined")
    return ParetoParams(alpha=data.size / log_sum, x_m=x_m)


def _weibull_score(
    k: float, log_y: np.ndarray, mean_log_y: float
) -> tuple[float, float]:
    """Profile-likelihood equation of the shape and its derivative."""
    weights = np.exp(k * log_y)
    total = weights.sum()
    first = float(np.dot(weights, log_y) / total)
    second = float(np.dot(weights, log_y * log_y) / total)
    value = first - 1.0 / k - mean_log_y
    slope = second - first * first + 1.0 / (k * k)
    return value, slope


def mle_weibull(samples: Iterable[float]) -> WeibullParams:
    """Fit a Weibull law.

    The shape solves the likelihood equation by Newton iteration kept
    inside [WEIBULL_K_MIN, WEIBULL_K_MAX], falling back to bisection. When
    the root lies outside the bracket the shape is capped with a warning.
    """
    data = _positive(samples, 2)
    top = float(data.max())
    # Normalized samples keep the power sums in range
    log_y = np.log(data / top)
    mean_log_y = float(log_y.mean())

    lo, hi = WEIBULL_K_MIN, WEIBULL_K_MAX
    g_lo, _ = _weibull_score(lo, log_y, mean_log_y)
    g_hi, _ = _weibull_score(hi, log_y, mean_log_y)
    if g_hi < 0:
        logger.warning(
            f"Weibull shape capped at {WEIBULL_K_MAX} for a near-degenerate sample"
        )
        k = hi
    elif g_lo > 0:
        logger.warning(f"Weibull shape capped at {WEIBULL_K_MIN}")
        k = lo
    else:
        k = 1.0
        for _ in range(NEWTON_MAX_ITERATIONS):
            value, slope = _weibull_score(k, log_y, mean_log_y)
            if value < 0:
                lo = k
            else:
                hi = k
            step = value / slope if slope > 0 else np.inf
            nxt = k - step
            if not lo < nxt < hi:
                nxt = 0.5 * (lo + hi)
            if abs(nxt - k) <= NEWTON_TOLERANCE * max(1.0, k):
                k = nxt
                break
            k = nxt
        else:
            raise NoConvergence(
                f"Weibull shape did not converge in {NEWTON_MAX_ITERATIONS} iterations"
            )

    scale = top * float(np.mean(np.exp(k * log_y))) ** (1.0 / k)
    return WeibullParams(k=k, scale=scale)
