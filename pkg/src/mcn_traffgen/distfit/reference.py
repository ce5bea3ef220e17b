# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""User-supplied empirical reference distributions."""

import csv
import math
from dataclasses import dataclass
from typing import IO, Iterable

import numpy as np
from scipy import special

from mcn_traffgen.distfit.gof import TestResult, ks_statistic
from mcn_traffgen.errors import SchemaViolation

REFERENCE_COLUMNS = ("value", "cum_prob")


@dataclass(frozen=True)
class ReferenceCdf:
    """Piecewise-linear CDF through stored (value, cum_prob) points."""

    values: tuple[float, ...]
    probs: tuple[float, ...]

    def __call__(self, x: np.ndarray | float) -> np.ndarray:
        return np.interp(x, self.values, self.probs, left=0.0, right=1.0)

    def statistic(self, samples: Iterable[float]) -> float:
        """Get the sup gap between a sample's ECDF and this CDF.

        The CDF is continuous above its first point, so both limits of the ECDF
        at each sorted sample bound the gap.
        """
        return ks_statistic(samples, self)


def load_empirical_reference(stream: IO[str]) -> ReferenceCdf:
    """Read a reference CDF from `value,cum_prob` CSV rows.

    A header row is optional. Values must be strictly increasing and
    probabilities non-decreasing within [0, 1], ending at 1.
    """
    values: list[float] = []
    probs: list[float] = []
    for line_no, row in enumerate(csv.reader(stream), start=1):
        if not row or not "".join(row).strip():
            continue
        if line_no == 1 and tuple(cell.strip() for cell in row) == REFERENCE_COLUMNS:
            continue
        if len(row) != 2:
            raise SchemaViolation(f"line {line_no}", "expected two columns")
        try:
            value, prob = float(row[0]), float(row[1])
        except ValueError:
            raise SchemaViolation(f"line {line_no}", "values must be numbers") from None
        if not 0.0 <= prob <= 1.0:
            raise SchemaViolation(
                f"line {line_no}", f"probability {prob} outside [0, 1]"
            )
        if values and value <= values[-1]:
            raise SchemaViolation(
                f"line {line_no}", "values are not strictly increasing"
            )
        if probs and prob < probs[-1]:
            raise SchemaViolation(f"line {line_no}", "probabilities are not monotone")
        values.append(value)
        probs.append(prob)

    if not values:
        raise SchemaViolation("reference", "no points")
    if probs[-1] != 1.0:
        raise SchemaViolation("reference", "last probability must be 1")
    return ReferenceCdf(tuple(values), tuple(probs))


def ks_test_reference(
    samples: Iterable[float], reference: ReferenceCdf, alpha: float = 0.05
) -> TestResult:
    """K-S test of a sample against an empirical reference."""
    data = list(samples)
    statistic = reference.statistic(data)
    p_value = float(special.kolmogorov(math.sqrt(len(data)) * statistic))
    return TestResult("KS", statistic, alpha, p_value > alpha, p_value=p_value)
