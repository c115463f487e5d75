"""Counting subsets of conjugacy classes whose class sum is not Schur-positive."""

from ._jit import jit_enabled
from .direct import direct_histogram
from .mitm import count_dominating_pairs, mitm_counts, pattern_histogram
from .report import STRATEGIES, CensusReport, count_f
from .rows import (
    Capable,
    CensusProblem,
    ThresholdCheck,
    census_problem,
    g,
    lower_bound,
    negative_capable,
    sign_row_failures_by_parity,
    slacks,
    subset_sums,
    threshold_facts,
)

__all__ = [
    "STRATEGIES",
    "Capable",
    "CensusProblem",
    "CensusReport",
    "ThresholdCheck",
    "census_problem",
    "count_dominating_pairs",
    "count_f",
    "direct_histogram",
    "g",
    "jit_enabled",
    "lower_bound",
    "mitm_counts",
    "negative_capable",
    "pattern_histogram",
    "sign_row_failures_by_parity",
    "slacks",
    "subset_sums",
    "threshold_facts",
]
