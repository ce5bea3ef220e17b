# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Tests for trace replay."""

import io

from mcn_traffgen.machine import (
    BootstrapPolicy,
    Level,
    TopState,
    replay,
    replay_trace,
    validate_sequence,
)
from mcn_traffgen.machine.replay import write_annotated
from mcn_traffgen.trace import ControlEvent, EventType, Generation


def events(*pairs: tuple[str, int], ue: str = "u1") -> list[ControlEvent]:
    return [ControlEvent(ts, ue, EventType(name)) for name, ts in pairs]


class TestReplay:
    """Tests for replay."""

    def test_empty(self):
        """Test replaying no events."""
        result = replay([])
        assert result.annotated == ()
        assert result.samples == ()

    def test_top_sojourns(self):
        """Test CONNECTED then IDLE top-level sojourns."""
        result = replay(events(("ATCH", 0), ("S1_CONN_REL", 10000), ("SRV_REQ", 30000)))
        top = [s for s in result.samples if s.level is Level.TOP]
        assert [(s.source, s.target, s.duration_ms) for s in top] == [
            ("CONNECTED", "IDLE", 10000),
            ("IDLE", "CONNECTED", 20000),
        ]
        assert not result.violations

    def test_bootstrap_from_first_event(self):
        """Test the prior inferred from a leading SRV_REQ."""
        result = replay(events(("SRV_REQ", 0)))
        assert str(result.prior) == "(IDLE, S1_REL_S_1)"
        assert str(result.annotated[0][1]) == "(CONNECTED, SRV_REQ_S)"

    def test_censored_sub_sojourn(self):
        """Test a sub sojourn preempted by a top-level transition."""
        result = replay(events(("ATCH", 0), ("HO", 5000), ("S1_CONN_REL", 9000)))
        sub = [s for s in result.samples if s.level is Level.SUB]
        completed = [s for s in sub if not s.censored]
        censored = [s for s in sub if s.censored]
        assert [(s.source, s.target, s.duration_ms) for s in completed] == [
            ("SRV_REQ_S", "HO_S", 5000)
        ]
        assert [(s.source, s.duration_ms) for s in censored] == [("HO_S", 4000)]
        assert censored[0].via is EventType.S1_CONN_REL

    def test_zero_length_sojourn_is_clamped(self):
        """Test that two events in the same millisecond give a 1 ms sojourn."""
        result = replay(events(("ATCH", 0), ("HO", 0)))
        sub = [s for s in result.samples if s.level is Level.SUB]
        assert sub[0].duration_ms == 1

    def test_violation_resynchronizes(self):
        """Test that replay continues after an illegal event."""
        result = replay(events(("ATCH", 0), ("ATCH", 1), ("HO", 2)))
        assert [v.index for v in result.violations] == [1]
        assert str(result.annotated[-1][1]) == "(CONNECTED, HO_S)"

    def test_from_deregistered_policy(self):
        """Test the fixed DEREGISTERED prior."""
        result = replay(events(("SRV_REQ", 0)), BootstrapPolicy.FROM_DEREGISTERED)
        assert len(result.violations) == 1

    def test_sojourns_cover_episodes(self):
        """Test that sub sojourns tile the time spent in CONNECTED."""
        result = replay(
            events(("ATCH", 0), ("HO", 300), ("TAU", 700), ("HO", 1200), ("DTCH", 2000))
        )
        sub = [s for s in result.samples if s.level is Level.SUB]
        assert sum(s.duration_ms for s in sub) == 2000


class TestValidateSequence:
    """Tests for validate_sequence."""

    def test_double_attach(self):
        """Test that ATCH is illegal from CONNECTED."""
        violations = validate_sequence(events(("ATCH", 0), ("ATCH", 1)))
        assert len(violations) == 1
        assert violations[0].index == 1
        assert violations[0].event is EventType.ATCH
        assert violations[0].state.top is TopState.CONNECTED

    def test_idle_tau_cycle(self):
        """Test that the IDLE TAU/release cycle is legal."""
        seq = events(
            ("SRV_REQ", 0),
            ("HO", 1),
            ("TAU", 2),
            ("S1_CONN_REL", 3),
            ("TAU", 4),
            ("S1_CONN_REL", 5),
        )
        assert validate_sequence(seq) == []

    def test_ho_in_idle(self):
        """Test that HO in IDLE is reported."""
        violations = validate_sequence(events(("S1_CONN_REL", 0), ("HO", 10)))
        assert len(violations) == 1

    def test_five_g_tau(self):
        """Test that TAU violates the 5G machine."""
        violations = validate_sequence(
            events(("ATCH", 0), ("TAU", 5)), generation=Generation.FIVE_G
        )
        assert len(violations) == 1


class TestReplayTrace:
    """Tests for replay_trace and write_annotated."""

    def test_annotated_csv(self, make_trace):
        """Test the annotated replay output."""
        trace = make_trace([(0, "u1", "PHONE", "ATCH"), (10, "u1", "PHONE", "HO")])
        results = replay_trace(trace)
        out = io.StringIO()
        write_annotated(results, out)
        lines = out.getvalue().splitlines()
        assert lines[0] == "timestamp_ms,ue_id,event_type,top_state,sub_state"
        assert lines[1:] == ["0,u1,ATCH,CONNECTED,SRV_REQ_S", "10,u1,HO,CONNECTED,HO_S"]
