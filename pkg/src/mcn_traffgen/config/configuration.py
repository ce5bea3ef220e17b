# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Settings file utilities for MCN Traffgen."""

import logging
from pathlib import Path
from typing import Any

import yaml
from pydantic import ValidationError

from mcn_traffgen.config.schema import Settings
from mcn_traffgen.errors import SchemaViolation
from mcn_traffgen.rendering import render_template

logger = logging.getLogger(__name__)


def load_config(path: Path | str | None = None) -> Settings:
    """Load settings from a YAML file, using schema defaults for missing values.

    With no path the schema defaults are returned.
    """
    if path is None:
        return Settings()

    config_path = Path(path)
    with open(config_path, "r") as f:
        try:
            user_config = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise SchemaViolation(str(config_path), f"Invalid YAML: {e}") from e

    if user_config is None:
        return Settings()
    if not isinstance(user_config, dict):
        raise SchemaViolation(str(config_path), "Settings file must be a mapping")

    try:
        settings = Settings(**user_config)
    except ValidationError as e:
        error = e.errors()[0]
        where = ".".join(str(loc) for loc in error["loc"]) or str(config_path)
        raise SchemaViolation(where, error["msg"]) from e

    logger.debug(f"Loaded settings from {config_path}")
    return settings


def save_config(settings: Settings | dict[str, Any], path: Path | str) -> None:
    """Save settings to a YAML file."""
    data = settings.model_dump() if isinstance(settings, Settings) else dict(settings)
    with open(path, "w") as f:
        yaml.safe_dump(data, f, indent=2, sort_keys=False)


def render_default_config() -> str:
    """Render the default settings as commented YAML."""
    return render_template("config.yaml.j2", fields=Settings.get_all_fields_metadata())
