# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Tests for model consistency checks."""

from dataclasses import replace

from mcn_traffgen.model import Edge, EmpiricalCdf, ModelEntry, ModelKey, TransitionModel
from mcn_traffgen.model import check_model
from mcn_traffgen.trace import DeviceType, EventType, Generation

KEY = ModelKey(DeviceType.PHONE, 0, 0)
SOJOURN = EmpiricalCdf.from_samples([1.0])


def with_edges(model, state, edges):
    entry = model.entry(KEY)
    transitions = dict(entry.transitions.edges)
    transitions[state] = tuple(edges)
    entries = dict(model.entries)
    entries[KEY] = ModelEntry(TransitionModel(transitions), entry.first_event)
    return replace(model, entries=entries)


class TestCheckModel:
    """Tests for check_model."""

    def test_fitted_model_is_consistent(self, fitted_model):
        """Test that a fitted model has no violations."""
        assert check_model(fitted_model) == []

    def test_probabilities_must_sum_to_one(self, fitted_model):
        """Test the per-state probability sum."""
        edge = Edge(EventType.S1_CONN_REL, "IDLE", 0.7, SOJOURN)
        violations = check_model(with_edges(fitted_model, "CONNECTED", [edge]))
        assert [v.path for v in violations] == ["keys[PHONE,0,0].transitions.CONNECTED"]

    def test_illegal_edge(self, fitted_model):
        """Test that edges outside the machine are reported."""
        edge = Edge(EventType.HO, "CONNECTED", 1.0, SOJOURN)
        violations = check_model(with_edges(fitted_model, "IDLE", [edge]))
        assert len(violations) == 1
        assert "not allowed" in violations[0].rule

    def test_weights_reference_missing_cluster(self, fitted_model):
        """Test that weights must point at fitted keys."""
        model = replace(fitted_model, weights={(DeviceType.PHONE, 0): {0: 0.5, 3: 0.5}})
        rules = [v.rule for v in check_model(model)]
        assert rules == ["cluster 3 has no entry"]

    def test_tau_in_5g_model(self, fitted_model):
        """Test that TAU edges are refused in a 5G model."""
        model = replace(fitted_model, generation=Generation.FIVE_G, baseline=None)
        rules = [v.rule for v in check_model(model)]
        assert "TAU state in a 5G model" in rules
        assert any("FIVE_G machine" in rule for rule in rules)
