# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Tests for pass-rate tables."""

import io

import numpy as np
import pytest

from mcn_traffgen.distfit import Family, GofTest, pass_rate_table
from mcn_traffgen.distfit.passrate import SampleGroup, collect_groups, write_pass_rates
from mcn_traffgen.errors import UnsupportedCombination
from mcn_traffgen.machine import replay_trace
from mcn_traffgen.trace import ControlEvent, DeviceType, EventType
from mcn_traffgen.trace.parser import trace_from_events

PHONE = DeviceType.PHONE


def exp_quantiles(n: int, scale: float = 1.0) -> tuple[float, ...]:
    u = (np.arange(1, n + 1) - 0.5) / n
    return tuple(float(v) for v in -scale * np.log1p(-u))


def group(samples, quantity="IA_HO", hour=0):
    return SampleGroup(PHONE, quantity, hour, 0, tuple(samples))


class TestPassRateTable:
    """Tests for pass_rate_table."""

    def test_rates(self):
        """Test the share of passing groups per quantity."""
        groups = [
            group(exp_quantiles(200)),
            group(exp_quantiles(200, 3.0), hour=1),
            group([2.0] * 50, hour=2),
            group(exp_quantiles(200), quantity="SOJ_IDLE"),
        ]
        rows = pass_rate_table(groups, Family.EXP, GofTest.KS)
        table = {row.quantity: (row.groups, row.passed) for row in rows}
        assert table == {"IA_HO": (3, 2), "SOJ_IDLE": (1, 1)}

    def test_small_groups_skipped(self):
        """Test that groups below the minimum size are left out."""
        rows = pass_rate_table([group([1.0, 2.0, 3.0])], Family.EXP, GofTest.KS)
        assert rows == []

    def test_unfittable_group_fails(self):
        """Test that a group the family cannot fit counts as failing."""
        rows = pass_rate_table([group([2.0] * 10)], Family.PARETO, GofTest.KS)
        assert rows[0].pass_pct == 0.0

    def test_ad_only_for_exponential(self):
        """Test the unsupported A² combinations."""
        with pytest.raises(UnsupportedCombination):
            pass_rate_table([], Family.WEIBULL, GofTest.AD)

    def test_empirical_needs_reference(self):
        """Test that the empirical family requires a reference."""
        with pytest.raises(UnsupportedCombination):
            pass_rate_table([], Family.EMPIRICAL_REF, GofTest.KS)

    def test_write(self):
        """Test the CSV layout."""
        groups = [group(exp_quantiles(200)), group([2.0] * 50, hour=1)]
        out = io.StringIO()
        write_pass_rates(pass_rate_table(groups, Family.EXP, GofTest.KS), out)
        assert out.getvalue() == "test,device,quantity,pass_pct\nKS,PHONE,IA_HO,50.0\n"


class TestCollectGroups:
    """Tests for collect_groups."""

    def test_sample_trace(self, sample_trace):
        """Test inter-arrival and sojourn groups of the sample trace."""
        groups = collect_groups(sample_trace, replay_trace(sample_trace))
        by_quantity = {g.quantity: sorted(g.samples) for g in groups}
        assert by_quantity["IA_HO"] == [3.0]
        assert by_quantity["IA_S1_CONN_REL"] == [12.0, 18.0, 43.0]
        assert by_quantity["SOJ_CONNECTED"] == [2.0, 8.0, 10.0, 10.0]
        assert by_quantity["SOJ_IDLE"] == [20.0, 41.0]
        assert all(g.cluster == 0 and g.hour == 0 for g in groups)

    def test_same_hour_pooled_across_days(self):
        """Test that one hour of day on two days forms a single group."""
        day_ms, three_am = 86_400_000, 3 * 3_600_000
        events = [
            ControlEvent(day * day_ms + three_am + offset, "u1", event)
            for day in (0, 1)
            for offset, event in (
                (0, EventType.SRV_REQ),
                (10_000, EventType.S1_CONN_REL),
            )
        ]
        trace = trace_from_events(events, {"u1": PHONE})
        groups = collect_groups(trace, replay_trace(trace))
        connected = [g for g in groups if g.quantity == "SOJ_CONNECTED"]
        assert len(connected) == 1
        assert connected[0].samples == (10.0, 10.0)
        assert all(g.hour == 3 for g in groups)
