# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Tests for the Poisson baseline."""

from dataclasses import replace

import numpy as np
import pytest

from mcn_traffgen.distfit import ks_two_sample
from mcn_traffgen.errors import ModelError
from mcn_traffgen.generator import GenConfig, Mode, generate
from mcn_traffgen.model import (
    BaselineModel,
    EmpiricalCdf,
    FirstEventModel,
    ModelFitter,
    ModelKey,
)
from mcn_traffgen.model.models import BaselineEntry
from mcn_traffgen.trace import ControlEvent, DeviceType, EventType
from mcn_traffgen.trace.parser import trace_from_events

PHONE = DeviceType.PHONE
KEY = ModelKey(PHONE, 0, 0)


def opening(event: EventType) -> FirstEventModel:
    return FirstEventModel({event: 1.0}, 0.0, EmpiricalCdf.from_points([(0.0, 1.0)]))


def with_baseline(model, ho_rate: float):
    entry = BaselineEntry(
        exit_rates={"CONNECTED": 0.1, "IDLE": 0.05},
        exit_events={
            "CONNECTED": {EventType.S1_CONN_REL: 1.0},
            "IDLE": {EventType.SRV_REQ: 1.0},
        },
        ho_rate=ho_rate,
        tau_rate=0.0,
        first_event=opening(EventType.SRV_REQ),
        mobility_first_event=(
            opening(EventType.HO) if ho_rate > 0 else FirstEventModel.silent_only()
        ),
    )
    return replace(model, baseline=BaselineModel({KEY: entry}))


class TestFitBaseline:
    """Tests for fit_baseline."""

    def test_rates(self, make_trace):
        """Test exponential rates of sojourns and a disabled TAU stream."""
        trace = make_trace(
            [
                (0, "u1", "PHONE", "SRV_REQ"),
                (2000, "u1", "PHONE", "S1_CONN_REL"),
                (10000, "u1", "PHONE", "SRV_REQ"),
                (12000, "u1", "PHONE", "S1_CONN_REL"),
            ]
        )
        entry = ModelFitter().fit(trace).baseline.entry(KEY)
        assert entry.exit_rates["CONNECTED"] == pytest.approx(0.5)
        assert entry.exit_rates["IDLE"] == pytest.approx(0.125)
        assert entry.tau_rate == 0.0
        assert entry.ho_rate == 0.0

    def test_single_event_stream(self, fitted_model):
        """Test that one TAU falls back to count over exposure."""
        entry = fitted_model.baseline.entry(KEY)
        assert entry.tau_rate == pytest.approx(1 / 7200)
        assert entry.ho_rate == pytest.approx(1 / 3)


class TestGenerateBaseline:
    """Tests for baseline generation."""

    def test_ho_in_idle(self, fitted_model):
        """Test that HO streams ignore the walk's state."""
        model = with_baseline(fitted_model, ho_rate=0.1)
        batch = generate(model, GenConfig(ue_count=20, mode=Mode.BASELINE))
        ho_idle = [
            e
            for e in batch
            if e.event.event_type is EventType.HO and e.state.top.value == "IDLE"
        ]
        assert ho_idle
        assert (PHONE, EventType.TAU) not in batch.event_totals()

    def test_no_ho(self, fitted_model):
        """Test that a zero HO rate disables the stream."""
        model = with_baseline(fitted_model, ho_rate=0.0)
        batch = generate(model, GenConfig(ue_count=20, mode=Mode.BASELINE))
        assert (PHONE, EventType.HO) not in batch.event_totals()
        assert batch.event_totals()[(PHONE, EventType.SRV_REQ)] > 0

    def test_mean_connected_sojourn(self, fitted_model):
        """Test that CONNECTED sojourns have the fitted mean."""
        model = with_baseline(fitted_model, ho_rate=0.0)
        batch = generate(model, GenConfig(ue_count=300, mode=Mode.BASELINE, seed=4))
        durations = []
        opened: dict[str, int] = {}
        for e in batch:
            ue = e.event.ue_id
            if e.event.event_type is EventType.SRV_REQ:
                opened[ue] = e.event.timestamp_ms
            elif e.event.event_type is EventType.S1_CONN_REL and ue in opened:
                durations.append(e.event.timestamp_ms - opened.pop(ue))
        assert np.mean(durations) / 1000.0 == pytest.approx(10.0, rel=0.03)

    def test_deterministic(self, fitted_model):
        """Test that baseline output only depends on the seed."""
        cfg = GenConfig(ue_count=30, mode=Mode.BASELINE, seed=3)
        a = generate(fitted_model, cfg)
        b = generate(fitted_model, cfg)
        assert np.array_equal(a.timestamp_ms, b.timestamp_ms)
        assert np.array_equal(a.event, b.event)

    def test_requires_baseline(self, fitted_model):
        """Test that a model without baseline cannot run in baseline mode."""
        model = replace(fitted_model, baseline=None)
        with pytest.raises(ModelError):
            generate(model, GenConfig(ue_count=1, mode=Mode.BASELINE))


def bimodal_trace(ue_count: int, seed: int):
    """Build one hour of UEs alternating short and long sojourns."""
    rng = np.random.default_rng(seed)
    events = []
    for n in range(ue_count):
        ue_id = f"u{n}"
        now = int(rng.integers(0, 60_000))
        while True:
            connected = 2.0 if rng.random() < 0.9 else 300.0
            idle = 5.0 if rng.random() < 0.8 else 600.0
            release = now + int(connected * rng.uniform(1.0, 1.2) * 1000)
            resume = release + int(idle * rng.uniform(1.0, 1.2) * 1000)
            if resume >= 3_600_000:
                break
            events.append(ControlEvent(now, ue_id, EventType.SRV_REQ))
            events.append(ControlEvent(release, ue_id, EventType.S1_CONN_REL))
            now = resume
    return trace_from_events(events, {f"u{n}": PHONE for n in range(ue_count)})


def connected_sojourns(events) -> list[float]:
    """Get the SRV_REQ to S1_CONN_REL gaps of each UE, in seconds."""
    opened: dict[str, int] = {}
    gaps = []
    for ev in sorted(events, key=lambda e: (e.ue_id, e.timestamp_ms)):
        if ev.event_type is EventType.SRV_REQ:
            opened[ev.ue_id] = ev.timestamp_ms
        elif ev.event_type is EventType.S1_CONN_REL and ev.ue_id in opened:
            gaps.append((ev.timestamp_ms - opened.pop(ev.ue_id)) / 1000.0)
    return gaps


class TestBaselineContrast:
    """Tests comparing both generation modes with the fitted trace."""

    def test_baseline_is_further_from_the_trace(self):
        """Test that the fitted model tracks bimodal sojourns and Poisson does not."""
        trace = bimodal_trace(60, seed=4)
        model = ModelFitter().fit(trace)
        truth = connected_sojourns(trace.iter_events())

        distances = {}
        for mode in Mode:
            cfg = GenConfig(ue_count=60, duration_hours=1, seed=9, mode=mode)
            synth = [s.event for s in generate(model, cfg)]
            distances[mode] = ks_two_sample(truth, connected_sojourns(synth))

        assert distances[Mode.OURS] < 0.15
        assert distances[Mode.BASELINE] > 0.5
        assert distances[Mode.OURS] < distances[Mode.BASELINE]
