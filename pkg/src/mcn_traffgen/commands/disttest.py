# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Distribution test command for MCN Traffgen."""

import logging
from pathlib import Path
from typing import IO

import click

from mcn_traffgen.commands.common import (
    configuration_option,
    handle_errors,
    load_settings,
    read_trace,
    trace_options,
)
from mcn_traffgen.distfit import Family, GofTest, load_empirical_reference
from mcn_traffgen.distfit.passrate import (
    collect_groups,
    pass_rate_table,
    write_pass_rates,
)
from mcn_traffgen.machine import replay_trace
from mcn_traffgen.model import ModelFitter

logger = logging.getLogger(__name__)


@click.command(help="""Test how well distribution families fit a trace.

TRACE is a CSV file of control-plane events. Inter-arrival times of every
event type and sojourn times of every state are grouped per device, 1-hour
interval and cluster; each group is fitted and tested, and the share of
passing groups is reported per device and quantity.""")
@click.argument(
    "trace_path",
    metavar="TRACE",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
)
@click.option(
    "--family",
    "-f",
    type=click.Choice([f.value for f in Family]),
    default=Family.EXP.value,
    show_default=True,
    help="Distribution family fitted to each group",
)
@click.option(
    "--test",
    "gof_test",
    type=click.Choice([t.value for t in GofTest]),
    default=GofTest.KS.value,
    show_default=True,
    help="Goodness-of-fit test (ad requires the exp family)",
)
@click.option(
    "--reference",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="Reference CDF file of value,cum_prob rows (empirical family)",
)
@click.option(
    "--output",
    "-o",
    type=click.File("w"),
    default="-",
    help="Path of the pass-rate CSV (default: stdout)",
)
@click.option(
    "--alpha",
    type=click.FloatRange(0.0, 1.0, min_open=True, max_open=True),
    default=None,
    help="Significance level (default: settings)",
)
@click.option(
    "--seed",
    "-s",
    type=click.IntRange(min=0),
    default=0,
    show_default=True,
    help="Seed of the A² bootstrap",
)
@click.option(
    "--clusters/--no-clusters",
    default=True,
    show_default=True,
    help="Group samples by fitted cluster, or pool every UE of a device",
)
@trace_options
@configuration_option
@click.pass_context
def disttest(
    ctx: click.Context,
    trace_path: Path,
    family: str,
    gof_test: str,
    reference: Path | None,
    output: IO[str],
    alpha: float | None,
    seed: int,
    clusters: bool,
    tac_catalog: Path | None,
    device_column: bool | None,
    unknown_tac: str | None,
    configuration: Path | None,
) -> None:
    """Disttest command implementation."""
    settings = load_settings(ctx, configuration)
    with handle_errors():
        ref = None
        if reference is not None:
            with open(reference, newline="") as f:
                ref = load_empirical_reference(f)

        trace = read_trace(
            trace_path, settings, tac_catalog, device_column, unknown_tac
        )
        assignments = None
        if clusters:
            fitter = ModelFitter.from_settings(settings, with_baseline=False)
            fitter.fit(trace)
            assignments = fitter.assignments

        replays = replay_trace(trace)
        groups = collect_groups(
            trace, replays, assignments, settings.UtcOffsetMinutes
        )
        logger.info(f"Testing {len(groups)} sample groups")
        rows = pass_rate_table(
            groups,
            Family(family),
            GofTest(gof_test),
            alpha if alpha is not None else settings.Alpha,
            ref,
            settings.MinGroupSize,
            settings.AdReplicates,
            seed,
        )
    write_pass_rates(rows, output)
