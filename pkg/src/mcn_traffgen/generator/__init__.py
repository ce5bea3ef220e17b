# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Trace generation from fitted models."""

from mcn_traffgen.generator.baseline import fit_baseline, generate_baseline
from mcn_traffgen.generator.generator import generate
from mcn_traffgen.generator.models import GenConfig, Mode, SynthBatch, SynthEvent
from mcn_traffgen.generator.sampling import sample_from_cdf

__all__ = [
    "GenConfig",
    "Mode",
    "SynthBatch",
    "SynthEvent",
    "fit_baseline",
    "generate",
    "generate_baseline",
    "sample_from_cdf",
]
