# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Exceptions raised by MCN Traffgen.

Every exception carries the process exit code the CLI uses when it escapes
a command.
"""

from typing import Any

from mcn_traffgen.constants import (
    EXIT_INPUT_FORMAT,
    EXIT_INSUFFICIENT_DATA,
    EXIT_MODEL_MISMATCH,
)


class TraffgenError(Exception):
    """Base class for all MCN Traffgen errors."""

    exit_code: int = 1


class TraceFormatError(TraffgenError):
    """Input trace or catalog could not be read."""

    exit_code = EXIT_INPUT_FORMAT


class MalformedLine(TraceFormatError):
    """A CSV record does not match the expected layout."""

    def __init__(self, line_no: int, reason: str = "") -> None:
        self.line_no = line_no
        self.reason = reason
        message = f"Malformed line {line_no}"
        if reason:
            message += f": {reason}"
        super().__init__(message)


class UnknownEventType(TraceFormatError):
    """An event type token is not part of the vocabulary."""

    def __init__(self, token: str, line_no: int | None = None) -> None:
        self.token = token
        self.line_no = line_no
        where = f" at line {line_no}" if line_no is not None else ""
        super().__init__(f"Unknown event type '{token}'{where}")


class UnknownTac(TraceFormatError):
    """A TAC is not in the catalog."""

    def __init__(self, tac: str) -> None:
        self.tac = tac
        super().__init__(f"Unknown TAC '{tac}'")


class InsufficientData(TraffgenError):
    """Not enough data to fit a model."""

    exit_code = EXIT_INSUFFICIENT_DATA

    def __init__(self, message: str, key: Any = None) -> None:
        self.key = key
        super().__init__(message)


class ModelError(TraffgenError):
    """A model file or a model/config combination is unusable."""

    exit_code = EXIT_MODEL_MISMATCH


class MissingKey(ModelError):
    """The model has no entry for a (device, hour, cluster) combination."""

    def __init__(self, device: Any, hour: int, cluster: int | None) -> None:
        self.device = device
        self.hour = hour
        self.cluster = cluster
        super().__init__(
            f"Model has no entry for device={device} hour={hour} cluster={cluster}"
        )


class FormatVersionMismatch(ModelError):
    """The model file was written by an incompatible format version."""

    def __init__(self, found: Any, expected: int) -> None:
        self.found = found
        self.expected = expected
        super().__init__(f"Model format version {found} (expected {expected})")


class SchemaViolation(ModelError):
    """A model or reference file violates its schema."""

    def __init__(self, path: str, reason: str) -> None:
        self.path = path
        self.reason = reason
        super().__init__(f"Schema violation at '{path}': {reason}")


class AlreadyFiveG(ModelError):
    """The model is already tagged FIVE_G."""

    def __init__(self) -> None:
        super().__init__("Model is already a 5G model")


class IllegalTransition(TraffgenError):
    """An event is not allowed from the current machine state."""

    exit_code = EXIT_INPUT_FORMAT

    def __init__(self, state: Any, event: Any) -> None:
        self.state = state
        self.event = event
        super().__init__(f"Event {event} is illegal from state {state}")


class StatisticsError(TraffgenError):
    """A statistical routine cannot be applied to its input."""

    exit_code = EXIT_INPUT_FORMAT


class EmptySample(StatisticsError):
    """The sample has too few values."""


class NonPositiveSample(StatisticsError):
    """The sample contains values that are not strictly positive."""


class DegenerateSample(StatisticsError):
    """All sample values are equal."""


class NoConvergence(StatisticsError):
    """An iterative estimator did not converge."""


class UnsupportedCombination(StatisticsError):
    """The requested (family, test) pair is not supported."""


class DegenerateStream(StatisticsError):
    """An event stream has no events to bin."""


class StreamTooShort(StatisticsError):
    """An event stream is shorter than the largest requested window."""
