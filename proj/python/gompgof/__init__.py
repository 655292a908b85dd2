"""Goodness-of-fit tests for the Gompertz law."""

from ._core import (
    FitResult,
    NumericError,
    TestOutcome,
    ad,
    cdf,
    cm,
    fit,
    gof,
    gompertz_cdf,
    gompertz_pdf,
    gompertz_quantile,
    gompertz_sample,
    hazard_to_pmf,
    ks,
    nelson_aalen,
    pdf,
    pilot_scale,
    sample,
    sample_lifetimes,
    score,
    simulate,
    stein_transform,
    t_statistic,
    truncate_pmf,
    v_process,
    watson,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
