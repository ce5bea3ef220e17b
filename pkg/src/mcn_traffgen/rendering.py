# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Jinja2 rendering of the packaged text templates."""

from functools import lru_cache
from typing import Any

import yaml
from jinja2 import Environment, PackageLoader


def to_yaml(value: Any, key: str) -> str:
    """Dump one ``key: value`` pair as block YAML."""
    return yaml.safe_dump({key: value}, sort_keys=False).rstrip("\n")


@lru_cache(maxsize=1)
def template_environment() -> Environment:
    """Get the environment loading templates from the package."""
    env = Environment(
        loader=PackageLoader("mcn_traffgen", "templates"),
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
    )
    env.filters["to_yaml"] = to_yaml
    return env


def render_template(name: str, **context: Any) -> str:
    """Render a packaged Jinja2 template."""
    return template_environment().get_template(name).render(**context)
