# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""5G model conversion."""

from mcn_traffgen.fiveg.convert import (
    ScalingFactors,
    convert_model_to_5g,
    load_scaling_factors,
    validate_5g_model,
)

__all__ = [
    "ScalingFactors",
    "convert_model_to_5g",
    "load_scaling_factors",
    "validate_5g_model",
]
