# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Common utilities for MCN Traffgen commands."""

import logging
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Callable, Iterator, NoReturn

import click

from mcn_traffgen.config import Settings, load_config
from mcn_traffgen.constants import CONFIG_FILE_NAME, THREADS_ENV_VAR
from mcn_traffgen.errors import TraffgenError
from mcn_traffgen.model import TrafficModel, load_model
from mcn_traffgen.trace import (
    DeviceType,
    Generation,
    Trace,
    TraceParser,
    load_tac_catalog,
)

logger = logging.getLogger(__name__)


LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
LOG_DATE_FORMAT = "%Y-%m-%dT%H:%M:%SZ"


def configure_logging(debug: bool = False, level: str = "INFO") -> logging.Logger:
    """Send the package's log records to stderr with UTC timestamps.

    Calling it again replaces the handler and level.

    Args:
        debug: Whether to force debug level logging
        level: Level name used when debug is off
    """
    package_logger = logging.getLogger(__name__.partition(".")[0])
    for handler in package_logger.handlers[:]:
        package_logger.removeHandler(handler)

    formatter = logging.Formatter(LOG_FORMAT, LOG_DATE_FORMAT)
    formatter.converter = time.gmtime
    handler = logging.StreamHandler()
    handler.setFormatter(formatter)
    package_logger.addHandler(handler)
    package_logger.setLevel(logging.DEBUG if debug else getattr(logging, level))
    package_logger.propagate = False
    return package_logger


def fail(error: TraffgenError) -> NoReturn:
    """Report an error and exit with its code."""
    click.secho(f"✗ {error}", fg="red", err=True)
    raise SystemExit(error.exit_code)


@contextmanager
def handle_errors() -> Iterator[None]:
    """Turn library errors into a message and the matching exit code."""
    try:
        yield
    except TraffgenError as e:
        logger.debug(f"{type(e).__name__}: {e}")
        fail(e)


def load_settings(ctx: click.Context, configuration: Path | None) -> Settings:
    """Load the settings file and apply its log level."""
    with handle_errors():
        settings = load_config(configuration)
    debug = ctx.obj.get("debug", False) if ctx.obj else False
    configure_logging(debug, settings.LogLevel)
    if configuration is not None:
        logger.debug(f"Settings file: {configuration}")
    return settings


def read_trace(
    path: Path,
    settings: Settings,
    tac_catalog: Path | None = None,
    device_column: bool | None = None,
    unknown_tac: str | None = None,
) -> Trace:
    """Parse a trace file; explicit options override the settings."""
    catalog = None
    if tac_catalog is not None:
        with open(tac_catalog, newline="") as f:
            catalog = load_tac_catalog(f)
    parser = TraceParser(
        catalog,
        unknown_tac=(
            unknown_tac if unknown_tac is not None else settings.UnknownTacPolicy
        ),
        device_column=(
            device_column if device_column is not None else settings.DeviceColumn
        ),
    )
    with open(path, newline="") as f:
        trace = parser.parse(f)
    logger.info(f"Read {trace.event_count} events of {trace.ue_count} UEs")
    return trace


def read_model(path: Path, check: bool = True) -> TrafficModel:
    """Read a model file."""
    with open(path) as f:
        return load_model(f, check)


debug_option = click.option(
    "--debug",
    "-d",
    is_flag=True,
    help="Enable debug output",
)

configuration_option = click.option(
    "--configuration",
    "-c",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help=f"Path to a {CONFIG_FILE_NAME} settings file",
)

threads_option = click.option(
    "--threads",
    "-t",
    type=click.IntRange(min=1),
    envvar=THREADS_ENV_VAR,
    default=None,
    help=f"Worker processes (default: settings, or ${THREADS_ENV_VAR})",
)

generation_option = click.option(
    "--generation",
    "-g",
    type=click.Choice([g.value for g in Generation]),
    default=Generation.LTE.value,
    show_default=True,
    help="Radio generation of the state machine",
)


def trace_options(func: Callable[..., Any]) -> Callable[..., Any]:
    """Add the options that control how a trace file is read."""
    options = [
        click.option(
            "--tac-catalog",
            type=click.Path(exists=True, dir_okay=False, path_type=Path),
            default=None,
            help="CSV file mapping TACs to device types",
        ),
        click.option(
            "--device-column/--tac-column",
            default=None,
            help="Read device types from a device_type column (default: settings)",
        ),
        click.option(
            "--unknown-tac",
            type=click.Choice(["reject", "skip", *(d.value for d in DeviceType)]),
            default=None,
            help="Unknown TAC policy (default: settings)",
        ),
    ]
    for option in reversed(options):
        func = option(func)
    return func
