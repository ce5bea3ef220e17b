# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Traffic model package for MCN Traffgen."""

from mcn_traffgen.model.cdf import EmpiricalCdf
from mcn_traffgen.model.fit import (
    ModelFitter,
    estimate_transitions,
    fit,
    fit_first_event,
)
from mcn_traffgen.model.io import load_model, save_model
from mcn_traffgen.model.models import (
    BaselineModel,
    Edge,
    FirstEventModel,
    ModelEntry,
    ModelKey,
    TrafficModel,
    TrajectoryModel,
    TransitionModel,
)
from mcn_traffgen.model.schema import ModelViolation, check_model

__all__ = [
    "BaselineModel",
    "Edge",
    "EmpiricalCdf",
    "FirstEventModel",
    "ModelEntry",
    "ModelFitter",
    "ModelKey",
    "ModelViolation",
    "TrafficModel",
    "TrajectoryModel",
    "TransitionModel",
    "check_model",
    "estimate_transitions",
    "fit",
    "fit_first_event",
    "load_model",
    "save_model",
]
