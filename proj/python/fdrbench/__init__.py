"""Negative-binomial DE simulation benchmark for BH/BY/Storey FDR control."""

from ._core import (
    AdjustedResults,
    ConfusionSummary,
    CountMatrix,
    CurveSeries,
    FcScheme,
    GroundTruth,
    ProjectionResult,
    Rng,
    SimulationConfig,
    TestResult,
    adjust_bh,
    adjust_by,
    confusion,
    error_rates,
    estimate_pi0,
    log2_transform,
    pca_projection,
    pr_curve,
    qvalues,
    roc_curve,
    run_de_tests,
    simulate_dataset,
    storey_qvalues,
    wilcoxon_rank_sum,
)

__all__ = [
    "AdjustedResults",
    "ConfusionSummary",
    "CountMatrix",
    "CurveSeries",
    "FcScheme",
    "GroundTruth",
    "ProjectionResult",
    "Rng",
    "SimulationConfig",
    "TestResult",
    "adjust_bh",
    "adjust_by",
    "confusion",
    "error_rates",
    "estimate_pi0",
    "log2_transform",
    "pca_projection",
    "pr_curve",
    "qvalues",
    "roc_curve",
    "run_de_tests",
    "simulate_dataset",
    "storey_qvalues",
    "wilcoxon_rank_sum",
]
