# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Generate command for MCN Traffgen."""

import logging
from collections import defaultdict
from pathlib import Path

import click
from pydantic import ValidationError

from mcn_traffgen.commands.common import (
    configuration_option,
    handle_errors,
    load_settings,
    read_model,
    threads_option,
)
from mcn_traffgen.constants import EXIT_MODEL_MISMATCH
from mcn_traffgen.generator import GenConfig, Mode, SynthBatch
from mcn_traffgen.generator import generate as run_generator
from mcn_traffgen.rendering import render_template
from mcn_traffgen.trace.models import DeviceType, event_label

logger = logging.getLogger(__name__)


def parse_device_mix(value: str | None) -> dict[DeviceType, float] | None:
    """Parse ``DEVICE=share`` pairs separated by commas."""
    if not value:
        return None
    mix: dict[DeviceType, float] = {}
    for item in value.split(","):
        name, sep, share = item.partition("=")
        if not sep:
            raise click.BadParameter(f"'{item}' is not DEVICE=SHARE")
        try:
            mix[DeviceType(name.strip().upper())] = float(share)
        except ValueError:
            raise click.BadParameter(f"'{item}' is not DEVICE=SHARE") from None
    return mix


def _totals(batch: SynthBatch) -> list[tuple[str, list[tuple[str, int]]]]:
    """Group event totals by device type, with generation labels."""
    per_device: dict[str, list[tuple[str, int]]] = defaultdict(list)
    for (device, event), count in batch.event_totals().items():
        per_device[device.value].append((event_label(event, batch.generation), count))
    return list(per_device.items())


@click.command(help="""Generate a synthetic control-plane trace from a model.

MODEL is a model file written by 'fit' or 'to5g'.""")
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
    help="Path of the trace CSV to write",
)
@click.option(
    "--ues",
    "-k",
    type=click.IntRange(min=1),
    required=True,
    help="Number of UEs to synthesize",
)
@click.option(
    "--start-hour",
    type=click.IntRange(0, 23),
    default=0,
    show_default=True,
    help="Hour-of-day the trace starts at",
)
@click.option(
    "--hours",
    type=click.IntRange(min=1),
    default=1,
    show_default=True,
    help="Trace length in hours",
)
@click.option(
    "--seed",
    "-s",
    type=click.IntRange(min=0),
    default=0,
    show_default=True,
    help="Seed of every random stream",
)
@click.option(
    "--mode",
    "-m",
    type=click.Choice([m.value for m in Mode]),
    default=Mode.OURS.value,
    show_default=True,
    help="Two-level semi-Markov model or Poisson baseline",
)
@click.option(
    "--device-mix",
    default=None,
    help="UEs per device type, e.g. PHONE=0.7,CONNECTED_CAR=0.3 (default: model)",
)
@click.option(
    "--utc-offset",
    type=click.IntRange(min=-14 * 60, max=14 * 60),
    default=None,
    help="UTC offset of wall-clock hours, in minutes (default: settings)",
)
@threads_option
@configuration_option
@click.pass_context
def generate(
    ctx: click.Context,
    model_path: Path,
    output: Path,
    ues: int,
    start_hour: int,
    hours: int,
    seed: int,
    mode: str,
    device_mix: str | None,
    utc_offset: int | None,
    threads: int | None,
    configuration: Path | None,
) -> None:
    """Generate command implementation."""
    settings = load_settings(ctx, configuration)
    try:
        cfg = GenConfig(
            ue_count=ues,
            start_hour=start_hour,
            duration_hours=hours,
            seed=seed,
            device_mix=parse_device_mix(device_mix),
            mode=Mode(mode),
            utc_offset_minutes=(
                utc_offset if utc_offset is not None else settings.UtcOffsetMinutes
            ),
            threads=threads if threads is not None else settings.Threads,
        )
    except ValidationError as e:
        click.secho("✗ Invalid generation parameters:", fg="red", err=True)
        for error in e.errors():
            field = ".".join(str(loc) for loc in error["loc"]) or "device_mix"
            click.secho(f"  • {field}: {error['msg']}", fg="red", err=True)
        raise SystemExit(EXIT_MODEL_MISMATCH)

    logger.debug(f"Generation parameters: {cfg.model_dump()}")
    with handle_errors():
        model = read_model(model_path)
        batch = run_generator(model, cfg)

    with open(output, "w", newline="") as f:
        batch.to_csv(f)
    logger.debug(f"Trace written to {output}")

    click.echo(
        render_template(
            "generate-summary.txt.j2",
            event_count=len(batch),
            generation=batch.generation.value,
            mode=cfg.mode.value,
            output=output,
            ue_count=cfg.ue_count,
            start_hour=cfg.start_hour,
            duration_hours=cfg.duration_hours,
            seed=cfg.seed,
            totals=_totals(batch),
        ),
        nl=False,
    )
