# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Analyze command for MCN Traffgen."""

import logging
from enum import Enum
from pathlib import Path
from typing import IO

import click

from mcn_traffgen.analysis import (
    BoxMetric,
    CompareMetric,
    DayFilter,
    cdf_compare,
    event_breakdown,
    hourly_box_stats,
    state_time_breakdown,
    variance_time_report,
)
from mcn_traffgen.analysis.boxstats import write_box_stats
from mcn_traffgen.analysis.breakdown import write_breakdown, write_state_time
from mcn_traffgen.analysis.compare import write_cdf_points
from mcn_traffgen.analysis.variance_time import write_variance_time
from mcn_traffgen.commands.common import (
    configuration_option,
    generation_option,
    handle_errors,
    load_settings,
    read_trace,
    trace_options,
)
from mcn_traffgen.machine import BootstrapPolicy
from mcn_traffgen.trace import DeviceType, EventType, Generation, Trace
from mcn_traffgen.trace.models import parse_event_label

logger = logging.getLogger(__name__)


class Report(str, Enum):
    """Reports computed by analyze."""

    BREAKDOWN = "breakdown"
    STATES = "states"
    BOXSTATS = "boxstats"
    VT = "vt"
    CDF = "cdf"


def event_timestamps(
    trace: Trace, event_type: EventType | None, device: DeviceType | None
) -> list[int]:
    """Collect the timestamps of the matching events of every UE."""
    ues = trace.ues_of(device) if device is not None else sorted(trace.events)
    return sorted(
        ev.timestamp_ms
        for ue in ues
        for ev in trace.events[ue]
        if event_type is None or ev.event_type is event_type
    )


@click.command(help="""Compute a report over a control-plane trace.

TRACE is a CSV file of control-plane events. Reports:

\b
  breakdown  share of each event type per device, HO and TAU per state
  states     share of time spent in each state per device
  boxstats   hourly box statistics of a per-UE metric
  vt         variance-time curve with its fitted-Poisson companion
  cdf        per-UE metric CDFs of TRACE and --vs, with their max y-distance""")
@click.argument(
    "trace_path",
    metavar="TRACE",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
)
@click.option(
    "--report",
    "-r",
    type=click.Choice([r.value for r in Report]),
    required=True,
    help="Report to compute",
)
@click.option(
    "--vs",
    "other_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="Synthetic trace compared against TRACE (cdf report)",
)
@click.option(
    "--output",
    "-o",
    type=click.File("w"),
    default="-",
    help="Path of the report CSV (default: stdout)",
)
@click.option(
    "--metric",
    type=click.Choice(sorted({m.value for m in BoxMetric} | {"count", "sojourn"})),
    default="count",
    show_default=True,
    help="Per-UE metric (boxstats, cdf)",
)
@click.option("--event", "event", default=None, help="Event type of count metrics")
@click.option("--state", default=None, help="State of sojourn metrics, e.g. IDLE")
@click.option(
    "--device",
    type=click.Choice([d.value for d in DeviceType]),
    default=None,
    help="Restrict the report to one device type",
)
@click.option(
    "--days",
    type=click.Choice([d.value for d in DayFilter]),
    default=DayFilter.ALL.value,
    show_default=True,
    help="Days pooled into box statistics",
)
@click.option(
    "--split/--no-split",
    default=False,
    help="Also compare inactive and active UEs separately (cdf)",
)
@click.option(
    "--active-threshold",
    type=click.IntRange(min=0),
    default=None,
    help="Events above which a UE is active (default: settings)",
)
@click.option(
    "--scale",
    "scales",
    type=click.FloatRange(1.0, 1000.0),
    multiple=True,
    help="Variance-time window in seconds, repeatable (default: settings)",
)
@click.option(
    "--seed",
    "-s",
    type=click.IntRange(min=0),
    default=0,
    show_default=True,
    help="Seed of the Poisson companion stream (vt)",
)
@click.option(
    "--utc-offset",
    type=click.IntRange(min=-14 * 60, max=14 * 60),
    default=None,
    help="UTC offset of wall-clock hours, in minutes (default: settings)",
)
@generation_option
@click.option(
    "--bootstrap",
    type=click.Choice([p.value for p in BootstrapPolicy]),
    default=BootstrapPolicy.INFER_FROM_FIRST_EVENT.value,
    show_default=True,
    help="State assumed before each UE's first event",
)
@trace_options
@configuration_option
@click.pass_context
def analyze(
    ctx: click.Context,
    trace_path: Path,
    report: str,
    other_path: Path | None,
    output: IO[str],
    metric: str,
    event: str | None,
    state: str | None,
    device: str | None,
    days: str,
    split: bool,
    active_threshold: int | None,
    scales: tuple[float, ...],
    seed: int,
    utc_offset: int | None,
    generation: str,
    bootstrap: str,
    tac_catalog: Path | None,
    device_column: bool | None,
    unknown_tac: str | None,
    configuration: Path | None,
) -> None:
    """Analyze command implementation."""
    settings = load_settings(ctx, configuration)
    kind = Report(report)
    if kind is Report.CDF and other_path is None:
        raise click.UsageError("The cdf report needs --vs")

    gen = Generation(generation)
    policy = BootstrapPolicy(bootstrap)
    dev = DeviceType(device) if device is not None else None
    off = utc_offset if utc_offset is not None else settings.UtcOffsetMinutes

    with handle_errors():
        event_type = parse_event_label(event) if event is not None else None
        trace = read_trace(
            trace_path, settings, tac_catalog, device_column, unknown_tac
        )

        try:
            if kind is Report.BREAKDOWN:
                write_breakdown(event_breakdown(trace, policy, gen), output)
            elif kind is Report.STATES:
                write_state_time(state_time_breakdown(trace, policy, gen), output)
            elif kind is Report.BOXSTATS:
                stats = hourly_box_stats(
                    trace,
                    BoxMetric(metric),
                    event_type,
                    state,
                    DayFilter(days),
                    dev,
                    off,
                    policy,
                    gen,
                )
                write_box_stats(stats, output)
            elif kind is Report.VT:
                curves = variance_time_report(
                    event_timestamps(trace, event_type, dev),
                    sorted(scales) if scales else settings.VtScales,
                    settings.BinMs,
                    seed,
                )
                write_variance_time(curves, output)
            else:
                assert other_path is not None
                other = read_trace(
                    other_path, settings, tac_catalog, device_column, unknown_tac
                )
                result = cdf_compare(
                    trace,
                    other,
                    CompareMetric(metric),
                    event_type,
                    state,
                    dev,
                    split,
                    (
                        active_threshold
                        if active_threshold is not None
                        else settings.ActiveThreshold
                    ),
                    policy,
                    gen,
                )
                write_cdf_points(result, output)
                click.echo(f"max y-distance: {result.distance:.6f}", err=True)
                if split:
                    for side in ("inactive", "active"):
                        distance = getattr(result, side)
                        shown = "n/a" if distance is None else f"{distance:.6f}"
                        click.echo(f"max y-distance ({side}): {shown}", err=True)
        except ValueError as e:
            raise click.UsageError(str(e)) from e
