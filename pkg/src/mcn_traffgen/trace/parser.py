# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Control-plane trace and TAC catalog parser."""

import csv
import logging
from typing import IO, Iterable

from mcn_traffgen.errors import MalformedLine, UnknownTac
from mcn_traffgen.trace.models import (
    ControlEvent,
    DeviceType,
    EventType,
    Generation,
    TacCatalog,
    Trace,
    event_label,
    parse_event_label,
)

logger = logging.getLogger(__name__)

TAC_LENGTH = 8

RAW_COLUMNS = ("timestamp_ms", "ue_id", "tac", "event_type")
DEVICE_COLUMNS = ("timestamp_ms", "ue_id", "device_type", "event_type")
ANNOTATED_COLUMNS = (
    "timestamp_ms",
    "ue_id",
    "device_type",
    "event_type",
    "top_state",
    "sub_state",
)
CATALOG_COLUMNS = ("tac", "device_type")

UNKNOWN_TAC_REJECT = "reject"
UNKNOWN_TAC_SKIP = "skip"


def map_tac(identifier: str, catalog: TacCatalog) -> DeviceType:
    """Resolve a TAC or IMEI-like identifier to its device type."""
    identifier = identifier.strip()
    if len(identifier) < TAC_LENGTH:
        raise UnknownTac(identifier)
    tac = identifier[:TAC_LENGTH]
    device = catalog.get(tac)
    if device is None:
        raise UnknownTac(tac)
    return device


def parse_device_type(token: str, line_no: int) -> DeviceType:
    """Parse a device type column value."""
    try:
        return DeviceType(token.strip().upper())
    except ValueError:
        raise MalformedLine(line_no, f"unknown device type '{token}'") from None


def load_tac_catalog(stream: IO[str]) -> TacCatalog:
    """Load a ``tac,device_type`` catalog."""
    reader = csv.reader(stream)
    header = next(reader, None)
    if header is None:
        return TacCatalog()
    if tuple(col.strip() for col in header) != CATALOG_COLUMNS:
        raise MalformedLine(1, f"expected header {','.join(CATALOG_COLUMNS)}")

    entries: dict[str, DeviceType] = {}
    for line_no, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(CATALOG_COLUMNS):
            raise MalformedLine(line_no, "expected 2 columns")
        tac = row[0].strip()
        if len(tac) != TAC_LENGTH or not tac.isdigit():
            raise MalformedLine(line_no, f"TAC '{tac}' is not exactly 8 digits")
        entries[tac] = parse_device_type(row[1], line_no)
    return TacCatalog(entries)


class TraceParser:
    """Parses control-plane event traces into per-UE sequences."""

    def __init__(
        self,
        catalog: TacCatalog | None = None,
        unknown_tac: str = UNKNOWN_TAC_REJECT,
        device_column: bool = False,
    ) -> None:
        """Initialize parser with the TAC catalog and unknown-TAC policy."""
        self.catalog = catalog or TacCatalog()
        self.unknown_tac = unknown_tac
        self.device_column = device_column
        self._fallback_device: DeviceType | None = None
        if unknown_tac not in (UNKNOWN_TAC_REJECT, UNKNOWN_TAC_SKIP):
            self._fallback_device = DeviceType(unknown_tac)

    def parse(self, stream: IO[str]) -> Trace:
        """Parse a trace CSV stream."""
        reader = csv.reader(stream)
        header = next(reader, None)
        if header is None:
            return Trace(events={}, devices={})
        columns = tuple(col.strip() for col in header)
        annotated = columns == ANNOTATED_COLUMNS
        if annotated or self.device_column:
            if columns not in (DEVICE_COLUMNS, ANNOTATED_COLUMNS):
                raise MalformedLine(1, f"expected header {','.join(DEVICE_COLUMNS)}")
        elif columns != RAW_COLUMNS:
            raise MalformedLine(1, f"expected header {','.join(RAW_COLUMNS)}")
        return self._parse_rows(reader, len(columns), annotated)

    def _parse_rows(
        self, rows: Iterable[list[str]], width: int, annotated: bool
    ) -> Trace:
        """Parse data rows into a trace."""
        per_ue: dict[str, list[tuple[ControlEvent, tuple[str, str]]]] = {}
        devices: dict[str, DeviceType] = {}
        reordered = 0
        skipped = 0

        for line_no, row in enumerate(rows, start=2):
            if not row:
                continue
            if len(row) != width:
                raise MalformedLine(line_no, f"expected {width} columns")
            timestamp_ms = self._parse_timestamp(row[0], line_no)
            ue_id = row[1].strip()
            if not ue_id:
                raise MalformedLine(line_no, "empty ue_id")
            event_type = parse_event_label(row[3], line_no=line_no)

            device = self._resolve_device(row[2], line_no, annotated)
            if device is None:
                skipped += 1
                continue
            known = devices.setdefault(ue_id, device)
            if known is not device:
                raise MalformedLine(
                    line_no, f"UE '{ue_id}' changes device type {known} -> {device}"
                )

            states = (row[4].strip(), row[5].strip()) if annotated else ("", "")
            seq = per_ue.setdefault(ue_id, [])
            if seq and timestamp_ms < seq[-1][0].timestamp_ms:
                reordered += 1
            seq.append((ControlEvent(timestamp_ms, ue_id, event_type), states))

        if reordered:
            logger.warning(f"Sorted {reordered} out-of-order records")
        if skipped:
            logger.warning(f"Skipped {skipped} records with unknown TAC")

        events: dict[str, tuple[ControlEvent, ...]] = {}
        annotations: dict[str, tuple[tuple[str, str], ...]] = {}
        for ue_id, seq in per_ue.items():
            # Stable: equal timestamps keep ingestion order
            seq.sort(key=lambda item: item[0].timestamp_ms)
            events[ue_id] = tuple(item[0] for item in seq)
            annotations[ue_id] = tuple(item[1] for item in seq)

        return Trace(
            events=events,
            devices=devices,
            annotations=annotations if annotated else None,
            reordered=reordered,
        )

    @staticmethod
    def _parse_timestamp(token: str, line_no: int) -> int:
        """Parse a non-negative millisecond timestamp."""
        try:
            value = int(token.strip())
        except ValueError:
            raise MalformedLine(line_no, f"bad timestamp '{token}'") from None
        if value < 0:
            raise MalformedLine(line_no, "negative timestamp")
        return value

    def _resolve_device(
        self, token: str, line_no: int, annotated: bool
    ) -> DeviceType | None:
        """Resolve the device column or TAC of a record."""
        if annotated or self.device_column:
            return parse_device_type(token, line_no)
        try:
            return map_tac(token, self.catalog)
        except UnknownTac:
            if self.unknown_tac == UNKNOWN_TAC_SKIP:
                return None
            if self._fallback_device is not None:
                return self._fallback_device
            raise


def parse_trace(
    stream: IO[str],
    catalog: TacCatalog | None = None,
    unknown_tac: str = UNKNOWN_TAC_REJECT,
    device_column: bool = False,
) -> Trace:
    """Parse a trace CSV stream with a TAC catalog."""
    parser = TraceParser(catalog, unknown_tac=unknown_tac, device_column=device_column)
    return parser.parse(stream)


def write_trace(
    trace: Trace, stream: IO[str], generation: Generation = Generation.LTE
) -> None:
    """Write a trace in the device-column layout (annotated if available)."""
    writer = csv.writer(stream, lineterminator="\n")
    annotated = trace.annotations is not None
    writer.writerow(ANNOTATED_COLUMNS if annotated else DEVICE_COLUMNS)
    rows = []
    for ue_id, seq in trace.events.items():
        device = trace.devices[ue_id].value
        states = trace.annotations[ue_id] if trace.annotations is not None else None
        for idx, ev in enumerate(seq):
            label = event_label(ev.event_type, generation)
            row = [ev.timestamp_ms, ue_id, device, label]
            if states is not None:
                row.extend(states[idx])
            rows.append(row)
    rows.sort(key=lambda row: (row[0], row[1]))
    writer.writerows(rows)


def trace_from_events(
    events: Iterable[ControlEvent], devices: dict[str, DeviceType]
) -> Trace:
    """Build a trace from loose events (sorted per UE, stable)."""
    per_ue: dict[str, list[ControlEvent]] = {}
    for ev in events:
        per_ue.setdefault(ev.ue_id, []).append(ev)
    return Trace(
        events={
            ue: tuple(sorted(seq, key=lambda e: e.timestamp_ms))
            for ue, seq in per_ue.items()
        },
        devices={ue: devices[ue] for ue in per_ue},
    )


