# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Distribution fitting and goodness-of-fit package for MCN Traffgen."""

from mcn_traffgen.distfit.gof import (
    TestResult,
    ad_test_exponential,
    ks_test,
    ks_two_sample,
)
from mcn_traffgen.distfit.mle import (
    ExponentialParams,
    ParetoParams,
    WeibullParams,
    mle_exponential,
    mle_pareto,
    mle_weibull,
)
from mcn_traffgen.distfit.passrate import Family, GofTest, pass_rate_table
from mcn_traffgen.distfit.reference import load_empirical_reference

__all__ = [
    "ExponentialParams",
    "Family",
    "GofTest",
    "ParetoParams",
    "TestResult",
    "WeibullParams",
    "ad_test_exponential",
    "ks_test",
    "ks_two_sample",
    "load_empirical_reference",
    "mle_exponential",
    "mle_pareto",
    "mle_weibull",
    "pass_rate_table",
]
