# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Tests for clustering features."""

import pytest

from mcn_traffgen.clustering import FeatureVector, extract_features
from mcn_traffgen.clustering.features import feature_thresholds
from mcn_traffgen.machine import Level, SojournSample
from mcn_traffgen.trace import ControlEvent, EventType


def connected(duration_s: float, censored: bool = False) -> SojournSample:
    return SojournSample(
        "CONNECTED",
        "IDLE",
        EventType.S1_CONN_REL,
        0,
        int(duration_s * 1000),
        Level.TOP,
        censored,
    )


class TestExtractFeatures:
    """Tests for extract_features."""

    def test_no_events(self):
        """Test a silent hour."""
        assert extract_features([], []).as_tuple() == (0.0, 0.0, 0.0, 0.0)

    def test_single_sojourn(self):
        """Test that one sojourn has no spread."""
        assert extract_features([], [connected(10)]).sd_connected_s == 0.0

    def test_population_sd(self):
        """Test the population standard deviation of two sojourns."""
        fv = extract_features([], [connected(10), connected(20)])
        assert fv.sd_connected_s == pytest.approx(5.0)

    def test_censored_and_sub_samples_ignored(self):
        """Test that only completed top-level sojourns count."""
        sub = SojournSample("SRV_REQ_S", "HO_S", EventType.HO, 0, 90_000, Level.SUB)
        fv = extract_features([], [connected(10), connected(50, censored=True), sub])
        assert fv.sd_connected_s == 0.0

    def test_counts_per_day(self):
        """Test that counts pooled over days are averaged."""
        events = [
            ControlEvent(i, "u1", EventType.SRV_REQ) for i in range(6)
        ] + [ControlEvent(10, "u1", EventType.S1_CONN_REL)]
        fv = extract_features(events, [], days=2)
        assert fv.n_srv_req == 3.0
        assert fv.n_s1_rel == 0.5

    def test_negative_feature_rejected(self):
        """Test the non-negativity invariant."""
        with pytest.raises(ValueError):
            FeatureVector(n_srv_req=-1.0)


class TestFeatureThresholds:
    """Tests for feature_thresholds."""

    def test_defaults(self):
        """Test one threshold for every feature."""
        assert feature_thresholds(5.0) == (5.0, 5.0, 5.0, 5.0)

    def test_override(self):
        """Test a per-feature override."""
        assert feature_thresholds(5.0, {"sd_idle_s": 60.0}) == (5.0, 5.0, 5.0, 60.0)

    def test_unknown_feature(self):
        """Test that unknown feature names are rejected."""
        with pytest.raises(ValueError):
            feature_thresholds(5.0, {"n_ho": 1.0})
