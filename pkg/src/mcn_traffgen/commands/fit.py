# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Fit command for MCN Traffgen."""

import logging
from collections import defaultdict
from pathlib import Path

import click

from mcn_traffgen.clustering.quadtree import write_cluster_report
from mcn_traffgen.commands.common import (
    configuration_option,
    handle_errors,
    load_settings,
    read_trace,
    trace_options,
)
from mcn_traffgen.model import ModelFitter, TrafficModel, save_model
from mcn_traffgen.rendering import render_template

logger = logging.getLogger(__name__)


def _cluster_rows(model: TrafficModel) -> list[tuple[str, str]]:
    """Format cluster counts as one line of hours per device."""
    per_device: dict[str, list[str]] = defaultdict(list)
    for (device, hour), count in model.cluster_counts().items():
        per_device[device.value].append(f"{hour:02d}h={count}")
    return [(device, " ".join(hours)) for device, hours in per_device.items()]


@click.command(help="""Fit a traffic model from a control-plane trace.

TRACE is a CSV file of control-plane events, either raw
(timestamp_ms,ue_id,tac,event_type) or with a device_type column.""")
@click.argument(
    "trace_path",
    metavar="TRACE",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
)
@click.option(
    "--output",
    "-o",
    type=click.Path(dir_okay=False, path_type=Path),
    required=True,
    help="Path of the model file to write",
)
@trace_options
@click.option(
    "--theta-f",
    type=click.FloatRange(min=0, min_open=True),
    default=None,
    help="Feature range below which clusters stop splitting (default: settings)",
)
@click.option(
    "--theta-n",
    type=click.IntRange(min=1),
    default=None,
    help="Cluster size below which clusters stop splitting (default: settings)",
)
@click.option(
    "--utc-offset",
    type=click.IntRange(min=-14 * 60, max=14 * 60),
    default=None,
    help="UTC offset of wall-clock hours, in minutes (default: settings)",
)
@click.option(
    "--baseline/--no-baseline",
    default=True,
    show_default=True,
    help="Also fit the Poisson baseline",
)
@click.option(
    "--cluster-report",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Write the clusters of every device and hour as CSV",
)
@configuration_option
@click.pass_context
def fit(
    ctx: click.Context,
    trace_path: Path,
    output: Path,
    tac_catalog: Path | None,
    device_column: bool | None,
    unknown_tac: str | None,
    theta_f: float | None,
    theta_n: int | None,
    utc_offset: int | None,
    baseline: bool,
    cluster_report: Path | None,
    configuration: Path | None,
) -> None:
    """Fit command implementation."""
    settings = load_settings(ctx, configuration)
    overrides: dict[str, object] = {"with_baseline": baseline}
    if theta_f is not None:
        overrides["theta_f"] = theta_f
    if theta_n is not None:
        overrides["theta_n"] = theta_n
    if utc_offset is not None:
        overrides["utc_offset_minutes"] = utc_offset

    with handle_errors():
        trace = read_trace(
            trace_path, settings, tac_catalog, device_column, unknown_tac
        )
        fitter = ModelFitter.from_settings(settings, **overrides)
        model = fitter.fit(trace)

    with open(output, "w") as f:
        save_model(model, f)
    logger.debug(f"Model written to {output}")

    if cluster_report is not None:
        with open(cluster_report, "w", newline="") as f:
            write_cluster_report(fitter.trees, f)
        logger.debug(f"Cluster report written to {cluster_report}")

    click.echo(
        render_template(
            "fit-summary.txt.j2",
            generation=model.generation.value,
            ue_count=trace.ue_count,
            event_count=trace.event_count,
            output=output,
            key_count=len(model.entries),
            baseline=model.baseline is not None,
            insufficient=len(fitter.insufficient),
            clusters=_cluster_rows(model),
        ),
        nl=False,
    )
