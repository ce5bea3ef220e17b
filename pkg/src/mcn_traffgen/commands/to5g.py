# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""5G conversion command for MCN Traffgen."""

import logging
from pathlib import Path

import click

from mcn_traffgen.commands.common import (
    configuration_option,
    handle_errors,
    load_settings,
    read_model,
)
from mcn_traffgen.constants import EXIT_VALIDATION_FAILURE
from mcn_traffgen.fiveg import (
    ScalingFactors,
    convert_model_to_5g,
    load_scaling_factors,
    validate_5g_model,
)
from mcn_traffgen.model import save_model

logger = logging.getLogger(__name__)


@click.command(help="""Convert an LTE model to the 5G state machine.

MODEL is an LTE model file written by 'fit'. TAU states and edges are
removed, and the odds of every edge are multiplied by its event's
frequency factor (HO defaults to 4.6).""")
@click.argument(
    "model_path",
    metavar="MODEL",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
)
@click.option(
    "--output",
    "-o",
    type=click.Path(dir_okay=False, path_type=Path),
    required=True,
    help="Path of the 5G model file to write",
)
@click.option(
    "--factors",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="CSV file of event,factor rows",
)
@click.option(
    "--scale-sojourn",
    is_flag=True,
    help="Also divide sojourn times of scaled edges by their factor",
)
@configuration_option
@click.pass_context
def to5g(
    ctx: click.Context,
    model_path: Path,
    output: Path,
    factors: Path | None,
    scale_sojourn: bool,
    configuration: Path | None,
) -> None:
    """To5g command implementation."""
    load_settings(ctx, configuration)
    with handle_errors():
        scaling = ScalingFactors()
        if factors is not None:
            with open(factors, newline="") as f:
                scaling = load_scaling_factors(f)
        logger.debug(f"Scaling factors: {scaling.factors}")

        model = read_model(model_path)
        converted = convert_model_to_5g(model, scaling, scale_sojourn)

    violations = validate_5g_model(converted)
    if violations:
        click.secho(
            f"✗ Converted model has {len(violations)} violations", fg="red", err=True
        )
        for v in violations:
            click.secho(f"  • {v.path}: {v.rule}", fg="red", err=True)
        raise SystemExit(EXIT_VALIDATION_FAILURE)

    with open(output, "w") as f:
        save_model(converted, f)

    click.secho(f"✓ Converted {len(converted.entries)} keys to 5G", fg="green")
    click.secho("  📄 Model: ", fg="white", nl=False)
    click.echo(output)
