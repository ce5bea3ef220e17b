# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Pass-rate tables of goodness-of-fit tests over grouped samples.

Samples are grouped per (device, hour of day, cluster) and quantity, pooling
the same hour across the days of the trace:
inter-arrival times of each event type and sojourn times of each state.
"""

import csv
import logging
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import IO, Sequence

from mcn_traffgen.clustering.quadtree import ClusterAssignment
from mcn_traffgen.distfit.gof import TestResult, ad_test_exponential, ks_test
from mcn_traffgen.distfit.mle import mle_exponential, mle_pareto, mle_weibull
from mcn_traffgen.distfit.reference import ReferenceCdf, ks_test_reference
from mcn_traffgen.errors import StatisticsError, UnsupportedCombination
from mcn_traffgen.machine.replay import ReplayResult
from mcn_traffgen.trace.hours import hour_position
from mcn_traffgen.trace.models import DeviceType, Trace

logger = logging.getLogger(__name__)

PASS_RATE_COLUMNS = ("test", "device", "quantity", "pass_pct")
MIN_GAP_S = 0.001


class Family(str, Enum):
    """Distribution families tested against."""

    EXP = "exp"
    PARETO = "pareto"
    WEIBULL = "weibull"
    EMPIRICAL_REF = "empirical"


class GofTest(str, Enum):
    """Goodness-of-fit tests."""

    KS = "ks"
    AD = "ad"


@dataclass(frozen=True)
class SampleGroup:
    """Samples of one quantity in one (device, hour of day, cluster)."""

    device: DeviceType
    quantity: str
    hour: int
    cluster: int
    samples: tuple[float, ...]


@dataclass(frozen=True)
class PassRateRow:
    """Share of groups passing a test."""

    test: GofTest
    device: DeviceType
    quantity: str
    groups: int
    passed: int

    @property
    def pass_pct(self) -> float:
        """Percentage of passing groups."""
        return 100.0 * self.passed / self.groups if self.groups else 0.0


def collect_groups(
    trace: Trace,
    replays: dict[str, ReplayResult],
    assignments: dict[tuple[DeviceType, int], ClusterAssignment] | None = None,
    utc_offset_minutes: int = 0,
) -> list[SampleGroup]:
    """Pool inter-arrival and sojourn samples into test groups.

    An inter-arrival belongs to the hour of its earlier event and a sojourn
    to the hour it started in. Without assignments every UE of a device
    falls in cluster 0. Gaps are floored at the 1 ms trace resolution.
    """
    pools: dict[tuple[DeviceType, str, int, int], list[float]] = defaultdict(list)

    def cluster_of(device: DeviceType, hour: int, ue_id: str) -> int:
        if assignments is None:
            return 0
        assignment = assignments.get((device, hour))
        cluster = assignment.cluster_of(ue_id) if assignment is not None else None
        return 0 if cluster is None else cluster

    for ue_id, seq in trace.events.items():
        device = trace.devices[ue_id]
        last_seen: dict[str, int] = {}
        for ev in seq:
            name = ev.event_type.value
            if name in last_seen:
                prev = last_seen[name]
                _, hour = hour_position(prev, utc_offset_minutes)
                gap = max((ev.timestamp_ms - prev) / 1000.0, MIN_GAP_S)
                cluster = cluster_of(device, hour, ue_id)
                pools[(device, f"IA_{name}", hour, cluster)].append(gap)
            last_seen[name] = ev.timestamp_ms

        result = replays.get(ue_id)
        if result is None:
            continue
        for sample in result.samples:
            if sample.censored:
                continue
            _, hour = hour_position(sample.start_ms, utc_offset_minutes)
            cluster = cluster_of(device, hour, ue_id)
            key = (device, f"SOJ_{sample.source}", hour, cluster)
            pools[key].append(sample.duration_s)

    return [
        SampleGroup(device, quantity, hour, cluster, tuple(values))
        for (device, quantity, hour, cluster), values in sorted(pools.items())
    ]


def run_test(
    samples: Sequence[float],
    family: Family,
    test: GofTest,
    alpha: float = 0.05,
    reference: ReferenceCdf | None = None,
    replicates: int = 10_000,
    seed: int = 0,
) -> TestResult:
    """Fit a family to a sample and test the fit."""
    if test is GofTest.AD:
        if family is not Family.EXP:
            raise UnsupportedCombination(
                f"A² is only supported for exp, not {family.value}"
            )
        return ad_test_exponential(samples, alpha, replicates, seed)

    if family is Family.EXP:
        return ks_test(samples, mle_exponential(samples).cdf, alpha)
    if family is Family.PARETO:
        return ks_test(samples, mle_pareto(samples).cdf, alpha)
    if family is Family.WEIBULL:
        return ks_test(samples, mle_weibull(samples).cdf, alpha)
    if reference is None:
        raise UnsupportedCombination("The empirical family needs a reference file")
    return ks_test_reference(samples, reference, alpha)


def pass_rate_table(
    groups: Sequence[SampleGroup],
    family: Family,
    test: GofTest,
    alpha: float = 0.05,
    reference: ReferenceCdf | None = None,
    min_size: int = 5,
    replicates: int = 10_000,
    seed: int = 0,
) -> list[PassRateRow]:
    """Get the share of groups passing a test, per (device, quantity).

    Groups smaller than ``min_size`` are left out. A group the family cannot
    be fitted to counts as failing.
    """
    if test is GofTest.AD and family is not Family.EXP:
        raise UnsupportedCombination(
            f"A² is only supported for exp, not {family.value}"
        )
    if family is Family.EMPIRICAL_REF and reference is None:
        raise UnsupportedCombination("The empirical family needs a reference file")

    tallies: dict[tuple[DeviceType, str], list[int]] = {}
    skipped = 0
    for group in groups:
        if len(group.samples) < min_size:
            skipped += 1
            continue
        try:
            result = run_test(
                group.samples, family, test, alpha, reference, replicates, seed
            )
            passed = result.passed
        except UnsupportedCombination:
            raise
        except StatisticsError as e:
            logger.debug(
                f"Group {group.device.value}/{group.quantity}/{group.hour:02d}h "
                f"fails: {e}"
            )
            passed = False
        tally = tallies.setdefault((group.device, group.quantity), [0, 0])
        tally[0] += 1
        tally[1] += int(passed)

    if skipped:
        logger.info(f"Skipped {skipped} groups with fewer than {min_size} samples")

    return [
        PassRateRow(test, device, quantity, total, passed)
        for (device, quantity), (total, passed) in sorted(tallies.items())
    ]


def write_pass_rates(rows: Sequence[PassRateRow], stream: IO[str]) -> None:
    """Write a pass-rate table as CSV."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(PASS_RATE_COLUMNS)
    for row in rows:
        writer.writerow(
            [
                row.test.value.upper(),
                row.device.value,
                row.quantity,
                f"{row.pass_pct:.1f}",
            ]
        )
