# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Validation commands for MCN Traffgen."""

import logging
from pathlib import Path

import click

from mcn_traffgen.commands.common import (
    configuration_option,
    generation_option,
    handle_errors,
    load_settings,
    read_model,
    read_trace,
    trace_options,
)
from mcn_traffgen.constants import EXIT_VALIDATION_FAILURE
from mcn_traffgen.fiveg import validate_5g_model
from mcn_traffgen.machine import BootstrapPolicy, replay_trace
from mcn_traffgen.machine.replay import write_annotated
from mcn_traffgen.model import check_model
from mcn_traffgen.trace import Generation

logger = logging.getLogger(__name__)

# Violations listed before the rest are summarized
MAX_LISTED = 20


@click.command(help="""Validate a trace against the EMM-ECM state machine.

TRACE is a CSV file of control-plane events. The command exits with 0
when every UE sequence is accepted by the machine and 5 otherwise.""")
@click.argument(
    "trace_path",
    metavar="TRACE",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
)
@generation_option
@click.option(
    "--bootstrap",
    type=click.Choice([p.value for p in BootstrapPolicy]),
    default=BootstrapPolicy.INFER_FROM_FIRST_EVENT.value,
    show_default=True,
    help="State assumed before each UE's first event",
)
@click.option(
    "--annotated",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Write every event with the state it leads to as CSV",
)
@trace_options
@configuration_option
@click.pass_context
def validate(
    ctx: click.Context,
    trace_path: Path,
    generation: str,
    bootstrap: str,
    annotated: Path | None,
    tac_catalog: Path | None,
    device_column: bool | None,
    unknown_tac: str | None,
    configuration: Path | None,
) -> None:
    """Validate command implementation."""
    settings = load_settings(ctx, configuration)
    gen = Generation(generation)
    with handle_errors():
        trace = read_trace(
            trace_path, settings, tac_catalog, device_column, unknown_tac
        )
        results = replay_trace(trace, BootstrapPolicy(bootstrap), gen)

    if annotated is not None:
        with open(annotated, "w", newline="") as f:
            write_annotated(results, f, gen)

    violations = [v for ue in sorted(results) for v in results[ue].violations]
    if not violations:
        click.secho(
            f"✓ {trace.ue_count} UEs, {trace.event_count} events accepted by the "
            f"{gen.value} machine",
            fg="green",
        )
        return

    click.secho(f"✗ {len(violations)} violations", fg="red", err=True)
    for v in violations[:MAX_LISTED]:
        click.secho(
            f"  • {v.ue_id}[{v.index}]: {v.rule}",
            fg="red",
            err=True,
        )
    if len(violations) > MAX_LISTED:
        click.secho(f"  … {len(violations) - MAX_LISTED} more", fg="red", err=True)
    raise SystemExit(EXIT_VALIDATION_FAILURE)


@click.command(
    "validate-model",
    help="""Validate a model file.

MODEL is a model file written by 'fit' or 'to5g'. Probability sums, CDFs,
cluster weights and machine edges are checked; FIVE_G models must also be
free of TAU. The command exits with 5 on violations.""",
)
@click.argument(
    "model_path",
    metavar="MODEL",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
)
@configuration_option
@click.pass_context
def validate_model(
    ctx: click.Context, model_path: Path, configuration: Path | None
) -> None:
    """Validate-model command implementation."""
    load_settings(ctx, configuration)
    with handle_errors():
        model = read_model(model_path, check=False)

    if model.generation is Generation.FIVE_G:
        violations = validate_5g_model(model)
    else:
        violations = check_model(model)

    if not violations:
        keys = len(model.entries)
        generation = model.generation.value
        click.secho(f"✓ {generation} model with {keys} keys is valid", fg="green")
        return

    click.secho(f"✗ {len(violations)} violations", fg="red", err=True)
    for v in violations[:MAX_LISTED]:
        click.secho(f"  • {v.path}: {v.rule}", fg="red", err=True)
    if len(violations) > MAX_LISTED:
        click.secho(f"  … {len(violations) - MAX_LISTED} more", fg="red", err=True)
    raise SystemExit(EXIT_VALIDATION_FAILURE)
