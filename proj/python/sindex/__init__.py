"""Robust effect size index: estimation, conversion, power and simulation."""

from ._sindex import (  # noqa: F401
    classify_effect,
    closed_form_slr,
    closed_form_two_means,
    cohens_d_bias_ratio,
    convert,
    estimate,
    estimate_effect_size,
    noncentral_chisq_cdf,
    noncentral_chisq_quantile,
    power_from,
    r2_bias_ratio,
    simulate,
    solve_alpha,
    solve_effect_size,
    solve_noncentrality,
    solve_sample_size,
)

__all__ = [
    "classify_effect",
    "closed_form_slr",
    "closed_form_two_means",
    "cohens_d_bias_ratio",
    "convert",
    "estimate",
    "estimate_effect_size",
    "noncentral_chisq_cdf",
    "noncentral_chisq_quantile",
    "power_from",
    "r2_bias_ratio",
    "simulate",
    "solve_alpha",
    "solve_effect_size",
    "solve_noncentrality",
    "solve_sample_size",
]
