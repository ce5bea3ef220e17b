# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Tests for the trace parser."""

import io

import pytest

from mcn_traffgen.errors import MalformedLine, UnknownEventType, UnknownTac
from mcn_traffgen.trace import (
    DeviceType,
    EventType,
    Generation,
    TacCatalog,
    Trace,
    TraceParser,
    load_tac_catalog,
    map_tac,
    parse_trace,
    write_trace,
)

RAW_HEADER = "timestamp_ms,ue_id,tac,event_type\n"
CATALOG = TacCatalog({"35123456": DeviceType.PHONE, "86000001": DeviceType.TABLET})


def parse_raw(body: str, **kwargs) -> Trace:
    return parse_trace(io.StringIO(RAW_HEADER + body), CATALOG, **kwargs)


class TestParseTrace:
    """Tests for parse_trace."""

    def test_empty_input_after_header(self):
        """Test that a header-only file yields an empty trace."""
        trace = parse_raw("")
        assert trace.ue_count == 0
        assert trace.is_empty()

    def test_completely_empty_input(self):
        """Test that an empty file yields an empty trace."""
        trace = parse_trace(io.StringIO(""), CATALOG)
        assert trace.ue_count == 0

    def test_single_record(self):
        """Test a single record resolved through the catalog."""
        trace = parse_raw("1000,u1,35123456,SRV_REQ\n")
        assert trace.devices == {"u1": DeviceType.PHONE}
        assert len(trace.events["u1"]) == 1
        event = trace.events["u1"][0]
        assert event.timestamp_ms == 1000
        assert event.event_type is EventType.SRV_REQ

    def test_out_of_order_records_are_sorted(self):
        """Test that per-UE records are reordered ascending."""
        trace = parse_raw("2000,u1,35123456,HO\n1000,u1,35123456,SRV_REQ\n")
        assert [ev.timestamp_ms for ev in trace.events["u1"]] == [1000, 2000]
        assert trace.reordered == 1

    def test_equal_timestamps_keep_ingestion_order(self):
        """Test that sorting is stable."""
        trace = parse_raw("1000,u1,35123456,SRV_REQ\n1000,u1,35123456,HO\n")
        assert [ev.event_type for ev in trace.events["u1"]] == [
            EventType.SRV_REQ,
            EventType.HO,
        ]

    def test_imei_like_identifier(self):
        """Test that only the first 8 characters are looked up."""
        trace = parse_raw("0,u1,8600000112345678,ATCH\n")
        assert trace.devices["u1"] is DeviceType.TABLET

    def test_malformed_line_reports_line_number(self):
        """Test that a short row raises MalformedLine with its line."""
        with pytest.raises(MalformedLine) as exc:
            parse_raw("1000,u1,35123456,SRV_REQ\n2000,u1\n")
        assert exc.value.line_no == 3

    def test_bad_timestamp(self):
        """Test that a non-integer timestamp is malformed."""
        with pytest.raises(MalformedLine):
            parse_raw("abc,u1,35123456,SRV_REQ\n")

    def test_negative_timestamp(self):
        """Test that a negative timestamp is malformed."""
        with pytest.raises(MalformedLine):
            parse_raw("-5,u1,35123456,SRV_REQ\n")

    def test_wrong_header(self):
        """Test that an unexpected header is rejected on line 1."""
        with pytest.raises(MalformedLine) as exc:
            parse_trace(io.StringIO("a,b,c,d\n"), CATALOG)
        assert exc.value.line_no == 1

    def test_unknown_event_type(self):
        """Test that an unknown event token is rejected."""
        with pytest.raises(UnknownEventType) as exc:
            parse_raw("1000,u1,35123456,PAGING\n")
        assert exc.value.token == "PAGING"

    def test_unknown_tac_rejected_by_default(self):
        """Test the reject policy."""
        with pytest.raises(UnknownTac):
            parse_raw("1000,u1,99999999,SRV_REQ\n")

    def test_unknown_tac_skipped(self):
        """Test the skip policy."""
        trace = parse_raw(
            "1000,u1,99999999,SRV_REQ\n1000,u2,35123456,SRV_REQ\n", unknown_tac="skip"
        )
        assert list(trace.events) == ["u2"]

    def test_unknown_tac_fallback_device(self):
        """Test assigning unknown TACs to a device type."""
        trace = parse_raw("1000,u1,99999999,SRV_REQ\n", unknown_tac="CONNECTED_CAR")
        assert trace.devices["u1"] is DeviceType.CONNECTED_CAR

    def test_device_changes_are_rejected(self):
        """Test that a UE cannot change device type."""
        with pytest.raises(MalformedLine):
            parse_raw("1000,u1,35123456,SRV_REQ\n2000,u1,86000001,HO\n")

    def test_device_column(self):
        """Test reading device types from a device_type column."""
        text = "timestamp_ms,ue_id,device_type,event_type\n5,u1,TABLET,ATCH\n"
        trace = parse_trace(io.StringIO(text), device_column=True)
        assert trace.devices["u1"] is DeviceType.TABLET

    def test_five_g_labels_are_mapped(self):
        """Test that 5G labels map to the internal vocabulary."""
        text = "timestamp_ms,ue_id,device_type,event_type\n5,u1,PHONE,REGISTER\n"
        trace = parse_trace(io.StringIO(text), device_column=True)
        assert trace.events["u1"][0].event_type is EventType.ATCH

    def test_annotated_generator_output(self):
        """Test that generator output keeps its state columns."""
        text = (
            "timestamp_ms,ue_id,device_type,event_type,top_state,sub_state\n"
            "0,ue0,PHONE,SRV_REQ,CONNECTED,SRV_REQ_S\n"
            "10,ue0,PHONE,HO,CONNECTED,HO_S\n"
        )
        trace = TraceParser().parse(io.StringIO(text))
        assert trace.annotations == {
            "ue0": (("CONNECTED", "SRV_REQ_S"), ("CONNECTED", "HO_S"))
        }


class TestWriteTrace:
    """Tests for write_trace."""

    def test_round_trip(self, make_trace):
        """Test that writing and re-reading yields the same trace."""
        trace = make_trace(
            [
                (1000, "u1", "PHONE", "SRV_REQ"),
                (1500, "u2", "TABLET", "ATCH"),
                (2000, "u1", "PHONE", "HO"),
            ]
        )
        out = io.StringIO()
        write_trace(trace, out)
        again = parse_trace(io.StringIO(out.getvalue()), device_column=True)
        assert again.events == trace.events
        assert again.devices == trace.devices

    def test_five_g_vocabulary(self, make_trace):
        """Test writing 5G labels."""
        trace = make_trace([(0, "u1", "PHONE", "ATCH")])
        out = io.StringIO()
        write_trace(trace, out, Generation.FIVE_G)
        assert "REGISTER" in out.getvalue()


class TestMapTac:
    """Tests for map_tac."""

    def test_long_identifier(self):
        """Test a 16-character identifier."""
        catalog = TacCatalog({"35123456": DeviceType.TABLET})
        assert map_tac("3512345600000000", catalog) is DeviceType.TABLET

    def test_exactly_eight_characters(self):
        """Test the 8-character boundary."""
        catalog = TacCatalog({"35123456": DeviceType.TABLET})
        assert map_tac("35123456", catalog) is DeviceType.TABLET

    def test_unknown(self):
        """Test an identifier missing from the catalog."""
        with pytest.raises(UnknownTac):
            map_tac("9999999912345678", CATALOG)

    def test_too_short(self):
        """Test an identifier shorter than a TAC."""
        with pytest.raises(UnknownTac):
            map_tac("3512", CATALOG)


class TestLoadTacCatalog:
    """Tests for load_tac_catalog."""

    def test_load(self):
        """Test loading a catalog."""
        text = "tac,device_type\n35123456,PHONE\n86000001,connected_car\n"
        catalog = load_tac_catalog(io.StringIO(text))
        assert len(catalog) == 2
        assert catalog.get("86000001") is DeviceType.CONNECTED_CAR

    def test_bad_tac(self):
        """Test that TACs must be exactly 8 digits."""
        with pytest.raises(MalformedLine) as exc:
            load_tac_catalog(io.StringIO("tac,device_type\n1234,PHONE\n"))
        assert exc.value.line_no == 2
