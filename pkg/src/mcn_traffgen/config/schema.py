# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Settings schema for MCN Traffgen.

The schema is the single source of truth for setting names (PascalCase),
descriptions, defaults and validation rules. Descriptions are reused as
comments by ``config init``.
"""

import types
from typing import Any, Literal, get_args, get_origin, get_type_hints

from pydantic import BaseModel, Field, field_validator
from pydantic_core import PydanticUndefined

from mcn_traffgen.clustering.features import FEATURE_NAMES
from mcn_traffgen.constants import (
    DEFAULT_CDF_MAX_POINTS,
    DEFAULT_THETA_F,
    DEFAULT_THETA_N,
    DEFAULT_VT_SCALES,
)
from mcn_traffgen.trace.models import DeviceType


class Settings(BaseModel):
    """MCN Traffgen settings schema."""

    # Clustering
    ThetaF: float = Field(
        default=DEFAULT_THETA_F,
        gt=0,
        description="Feature range below which a quadtree node stops splitting",
    )
    ThetaN: int = Field(
        default=DEFAULT_THETA_N,
        ge=1,
        description="Member count below which a quadtree node stops splitting",
    )
    FeatureThresholds: dict[str, float] = Field(
        default_factory=dict,
        description="Per-feature overrides of ThetaF (n_srv_req, n_s1_rel, sd_connected_s, sd_idle_s)",
    )

    # Trace input
    UtcOffsetMinutes: int = Field(
        default=0,
        ge=-14 * 60,
        le=14 * 60,
        description="Fixed UTC offset used to compute wall-clock hours",
    )
    UnknownTacPolicy: str = Field(
        default="reject",
        description="What to do with unknown TACs: 'reject', 'skip' or a device type name",
    )
    DeviceColumn: bool = Field(
        default=False,
        description="Read the device type from a device_type column instead of a TAC",
    )

    # Model fitting
    CdfMaxPoints: int = Field(
        default=DEFAULT_CDF_MAX_POINTS,
        ge=2,
        description="Maximum number of points stored per empirical CDF",
    )

    # Statistical tests
    Alpha: float = Field(
        default=0.05,
        gt=0,
        lt=1,
        description="Significance level of goodness-of-fit tests",
    )
    AdReplicates: int = Field(
        default=10000,
        ge=10000,
        description="Bootstrap replicates used to calibrate Anderson-Darling critical values",
    )
    MinGroupSize: int = Field(
        default=5,
        ge=2,
        description="Minimum sample count of a group entering a pass-rate table",
    )

    # Analysis
    VtScales: list[float] = Field(
        default_factory=lambda: list(DEFAULT_VT_SCALES),
        description="Variance-time window sizes, in seconds",
    )
    BinMs: int = Field(
        default=100,
        ge=1,
        description="Bin width of variance-time analysis, in milliseconds",
    )
    ActiveThreshold: int = Field(
        default=2,
        ge=0,
        description="UEs with more events than this are active in split CDF comparisons",
    )

    # Execution
    Threads: int = Field(
        default=1,
        ge=1,
        description="Worker processes used by the generator",
    )

    # Logging
    LogLevel: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = Field(
        default="INFO",
        description="Default log level",
    )

    model_config = {"extra": "forbid"}

    @field_validator("FeatureThresholds")
    @classmethod
    def validate_feature_thresholds(cls, v: dict[str, float]) -> dict[str, float]:
        """Validate feature names and threshold values."""
        for name, value in v.items():
            if name not in FEATURE_NAMES:
                raise ValueError(
                    f"Unknown feature '{name}'. "
                    f"Must be one of: {', '.join(FEATURE_NAMES)}"
                )
            if value <= 0:
                raise ValueError(f"Threshold for '{name}' must be positive")
        return v

    @field_validator("UnknownTacPolicy")
    @classmethod
    def validate_unknown_tac_policy(cls, v: str) -> str:
        """Validate the unknown-TAC policy."""
        if v in ("reject", "skip") or v in DeviceType.__members__:
            return v
        choices = ", ".join(["reject", "skip", *DeviceType.__members__])
        raise ValueError(f"Invalid policy '{v}'. Must be one of: {choices}")

    @field_validator("VtScales")
    @classmethod
    def validate_vt_scales(cls, v: list[float]) -> list[float]:
        """Validate that window sizes are within 1 s and 1000 s."""
        if not v:
            raise ValueError("At least one variance-time scale is required")
        for scale in v:
            if not 1.0 <= scale <= 1000.0:
                raise ValueError(f"Scale {scale} is outside [1, 1000] seconds")
        return sorted(set(v))

    @classmethod
    def get_field_description(cls, field_name: str) -> str:
        """Get the description for a specific field."""
        field_info = cls.model_fields.get(field_name)
        if field_info and field_info.description:
            return field_info.description
        return ""

    @classmethod
    def get_all_fields_metadata(cls) -> list[dict[str, Any]]:
        """Get metadata for all fields in schema order.

        Returns a list of dicts with: name, description, default, type_hint
        """
        fields_metadata = []
        type_hints = get_type_hints(cls)

        for field_name, field_info in cls.model_fields.items():
            if field_info.default is not PydanticUndefined:
                default = field_info.default
            elif field_info.default_factory is not None:
                default = field_info.default_factory()  # type: ignore[call-arg]
            else:
                default = None

            fields_metadata.append(
                {
                    "name": field_name,
                    "description": field_info.description or "",
                    "default": default,
                    "type_hint": cls._format_type_hint(type_hints.get(field_name)),
                }
            )

        return fields_metadata

    @classmethod
    def _format_type_hint(cls, type_hint: Any) -> str:
        """Format a type hint for display in comments."""
        if type_hint is None:
            return "Any"

        origin = get_origin(type_hint)
        args = get_args(type_hint)

        if origin is Literal:
            return "one of: " + ", ".join(repr(a) for a in args)
        if origin is list:
            return "list"
        if origin is dict:
            return "dict"
        if origin is types.UnionType:
            non_none_args = [a for a in args if a is not type(None)]
            return " | ".join(cls._format_type_hint(a) for a in non_none_args)
        return str(getattr(type_hint, "__name__", type_hint))
