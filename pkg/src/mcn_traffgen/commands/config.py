# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Configuration commands for MCN Traffgen."""

import json
import logging
from pathlib import Path
from typing import NoReturn

import click
import yaml
from pydantic import ValidationError

from mcn_traffgen.commands.common import (
    configuration_option,
    handle_errors,
    load_settings,
)
from mcn_traffgen.config import Settings, load_config, save_config
from mcn_traffgen.config.configuration import render_default_config
from mcn_traffgen.constants import CONFIG_FILE_NAME, EXIT_MODEL_MISMATCH

logger = logging.getLogger(__name__)


def _unknown_key(key: str) -> NoReturn:
    click.secho(f"✗ Unknown setting '{key}'", fg="red", err=True)
    raise SystemExit(EXIT_MODEL_MISMATCH)


@click.group(help="Manage settings files.")
def config() -> None:
    """Config command group implementation."""


@config.command(help=f"""Write a settings file with every default.

PATH is the file to create (conventionally {CONFIG_FILE_NAME}).""")
@click.argument("path", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--force", "-f", is_flag=True, help="Overwrite an existing file")
def init(path: Path, force: bool) -> None:
    """Init command implementation."""
    if path.exists() and not force:
        click.secho(f"✗ '{path}' already exists, use --force", fg="red", err=True)
        raise SystemExit(1)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_default_config())
    click.secho(f"✓ {path}", fg="green")


@config.command(help="Show the effective settings as JSON.")
@configuration_option
@click.pass_context
def show(ctx: click.Context, configuration: Path | None) -> None:
    """Show command implementation."""
    settings = load_settings(ctx, configuration)
    click.echo(json.dumps(settings.model_dump(), indent=2))


@config.command(help="Get a setting.")
@click.argument("key")
@configuration_option
@click.pass_context
def get(ctx: click.Context, key: str, configuration: Path | None) -> None:
    """Get command implementation."""
    settings = load_settings(ctx, configuration)
    if key not in Settings.model_fields:
        _unknown_key(key)
    result = {"key": key, "value": getattr(settings, key)}
    click.echo(json.dumps(result, indent=2))


@config.command(help="""Set a setting in a settings file.

VALUE is parsed as YAML, so numbers, booleans and lists keep their type.""")
@click.argument("key")
@click.argument("value")
@click.option(
    "--configuration",
    "-c",
    type=click.Path(dir_okay=False, path_type=Path),
    required=True,
    help=f"Path to the {CONFIG_FILE_NAME} file to update (created if missing)",
)
def set(key: str, value: str, configuration: Path) -> None:
    """Set command implementation."""
    if key not in Settings.model_fields:
        _unknown_key(key)

    with handle_errors():
        settings = load_config(configuration if configuration.exists() else None)
    data = settings.model_dump()
    old_value = data[key]
    data[key] = yaml.safe_load(value)

    try:
        updated = Settings(**data)
    except ValidationError as e:
        click.secho("✗ Invalid setting:", fg="red", err=True)
        for error in e.errors():
            field = ".".join(str(loc) for loc in error["loc"])
            click.secho(f"  • {field}: {error['msg']}", fg="red", err=True)
        raise SystemExit(EXIT_MODEL_MISMATCH)

    save_config(updated, configuration)
    result = {"key": key, "value": getattr(updated, key), "oldValue": old_value}
    click.echo(json.dumps(result, indent=2))
