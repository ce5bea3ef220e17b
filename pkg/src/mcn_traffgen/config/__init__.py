# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Configuration package for MCN Traffgen."""

from mcn_traffgen.config.configuration import load_config, save_config
from mcn_traffgen.config.schema import Settings

__all__ = ["Settings", "load_config", "save_config"]
