# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Constants for MCN Traffgen."""

from importlib.metadata import version, PackageNotFoundError

try:
    __version__ = version("mcn-traffgen")
except PackageNotFoundError:
    __version__ = "0.0.0"

CONFIG_FILE_NAME = "mcn-traffgen.yaml"
THREADS_ENV_VAR = "MCN_TRAFFGEN_THREADS"

MODEL_FORMAT_VERSION = 1

MS_PER_SECOND = 1000
MS_PER_HOUR = 3_600_000
HOURS_PER_DAY = 24

# 1970-01-01 was a Thursday (Monday == 0)
EPOCH_WEEKDAY = 3

# Clustering defaults
DEFAULT_THETA_F = 5.0
DEFAULT_THETA_N = 1000

# Sojourn CDFs are compressed to this many quantiles beyond this size
DEFAULT_CDF_MAX_POINTS = 4096

# Weibull shape search bracket
WEIBULL_K_MIN = 1e-4
WEIBULL_K_MAX = 1e4

# Default variance-time window ladder (seconds)
DEFAULT_VT_SCALES = [1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0, 200.0, 500.0, 1000.0]

# Exit codes
EXIT_OK = 0
EXIT_INPUT_FORMAT = 2
EXIT_INSUFFICIENT_DATA = 3
EXIT_MODEL_MISMATCH = 4
EXIT_VALIDATION_FAILURE = 5
